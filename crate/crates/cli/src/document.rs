use std::path::Path;

use linkform::arith::{FinAbGroup, QZValue};
use linkform::linking::{LinkingForm, SIGN_CONVENTION};
use serde::{Deserialize, Serialize};

use crate::report::Failure;

/// `{"orders": [..], "gram": [["a/b", ..], ..], "name": .., "sign_convention": "sec3"}`
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDocument {
    pub orders: Vec<u64>,
    pub gram: Vec<Vec<QZValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign_convention: Option<String>,
}

impl FormDocument {
    pub fn from_form(form: &LinkingForm, name: Option<String>) -> Self {
        FormDocument {
            orders: form.group().orders().to_vec(),
            gram: form.gram().to_vec(),
            name,
            sign_convention: Some(SIGN_CONVENTION.to_string()),
        }
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, Failure> {
        let doc: FormDocument =
            serde_json::from_str(text).map_err(|e| Failure::parse(format!("{origin}: {e}")))?;
        if let Some(tag) = &doc.sign_convention {
            if tag != SIGN_CONVENTION {
                return Err(Failure::parse(format!(
                    "{origin}: unsupported sign_convention {tag:?} (expected {SIGN_CONVENTION:?})"
                )));
            }
        }
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn to_form(&self) -> Result<LinkingForm, Failure> {
        let group = FinAbGroup::new(self.orders.clone()).map_err(Failure::from)?;
        LinkingForm::new(group, self.gram.clone()).map_err(Failure::from)
    }
}

pub fn read_form(path: &Path) -> Result<(FormDocument, LinkingForm), Failure> {
    let doc = FormDocument::read(path)?;
    let form = doc.to_form()?;
    Ok((doc, form))
}
