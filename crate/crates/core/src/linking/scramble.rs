use num_integer::Integer;
use rand::Rng;

use crate::arith::GroupElement;
use crate::error::Result;

use super::{FormMorphism, LinkingForm};

/// A random change of basis of `m`'s group. Returns the form in the new basis
/// and the isomorphism from it onto `m`.
///
/// Moves are `u_i += c u_j` (when `ord(u_j) | c d_i`), `u_i *= unit`, and
/// swaps of generators of equal order.
pub fn scramble<R: Rng + ?Sized>(
    m: &LinkingForm,
    rng: &mut R,
    steps: usize,
) -> Result<(LinkingForm, FormMorphism)> {
    let g = m.group();
    let d = g.orders().to_vec();
    let r = d.len();
    let mut u: Vec<GroupElement> = g.generators();
    if r > 0 {
        for _ in 0..steps {
            let i = rng.gen_range(0..r);
            match rng.gen_range(0..3) {
                0 => {
                    let j = rng.gen_range(0..r);
                    if i == j {
                        continue;
                    }
                    let c = rng.gen_range(1..d[j].max(2)) as i128;
                    let add = g.scale(&u[j], c);
                    if g.scale(&add, d[i] as i128).is_zero() {
                        u[i] = g.add(&u[i], &add);
                    }
                }
                1 => {
                    let a = rng.gen_range(1..d[i].max(2));
                    if a.gcd(&d[i]) == 1 {
                        u[i] = g.scale(&u[i], a as i128);
                    }
                }
                _ => {
                    let j = rng.gen_range(0..r);
                    if d[i] == d[j] {
                        u.swap(i, j);
                    }
                }
            }
        }
    }
    let scrambled = m.pullback(g.clone(), &u)?;
    let iso = FormMorphism::new(scrambled.clone(), m.clone(), u)?;
    Ok((scrambled, iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linking::{are_isomorphic, normal_form};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scrambles_preserve_the_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = LinkingForm::standard_w(3)
            .unwrap()
            .direct_sum(&LinkingForm::standard_w(9).unwrap());
        for _ in 0..20 {
            let (s, iso) = scramble(&m, &mut rng, 30).unwrap();
            assert!(iso.is_injective());
            assert_eq!(normal_form(&s).unwrap(), normal_form(&m).unwrap());
            assert!(are_isomorphic(&s, &m).unwrap());
        }
    }
}
