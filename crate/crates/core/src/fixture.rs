//! JSON files read and written by the CLI.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cover::CoverComponent;
use crate::error::{Error, Result};
use crate::order::ComputableOrder;
use crate::word::FiniteWord;

/// `{"cylinders": [[1], [2, 0]]}`: the property `C ∩ ⋃ [v]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyFixture {
    pub cylinders: Vec<FiniteWord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub class: String,
    pub components: Vec<CoverComponent>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad {what} JSON: {e}")))
}

impl PropertyFixture {
    pub fn load(path: &Path) -> Result<Self> {
        parse(&read(path)?, "property")
    }
}

impl CoverFile {
    pub fn load(path: &Path) -> Result<Self> {
        parse(&read(path)?, "cover")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("cover serializes");
        fs::write(path, text + "\n").map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
    }
}

/// `identity`, inline JSON, or a path to a JSON file.
pub fn load_order(arg: &str) -> Result<ComputableOrder> {
    if arg == "identity" {
        return Ok(ComputableOrder::Identity);
    }
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    parse(&text, "order")
}
