//! Reading identities from files or command-line text.

use std::path::Path;

use semiwork_core::{expand_all, parse_identity, parse_identity_set, Identity};

use crate::WorkbenchError;

/// Reads an identity-set file: one identity per line, `#` comments.
/// Zero-forms are expanded.
pub fn load_identity_file(path: &Path) -> Result<Vec<Identity>, WorkbenchError> {
    Ok(expand_all(&read_identity_file(path)?))
}

/// Like [`load_identity_file`], keeping zero-forms as written.
pub fn read_identity_file(path: &Path) -> Result<Vec<Identity>, WorkbenchError> {
    let text = std::fs::read_to_string(path).map_err(|e| WorkbenchError::io(path, e))?;
    parse_identity_set(&text).map_err(|source| WorkbenchError::Parse {
        context: path.display().to_string(),
        source,
    })
}

pub fn parse_one(text: &str) -> Result<Identity, WorkbenchError> {
    parse_identity(text).map_err(|source| WorkbenchError::Parse {
        context: format!("identity {text:?}"),
        source,
    })
}

/// An argument naming an existing file is loaded as an identity set;
/// anything else is parsed as identities separated by `;`. Zero-forms are
/// expanded either way.
pub fn identities_arg(arg: &str) -> Result<Vec<Identity>, WorkbenchError> {
    Ok(expand_all(&identities_arg_as_written(arg)?))
}

/// Like [`identities_arg`], keeping zero-forms as written.
pub fn identities_arg_as_written(arg: &str) -> Result<Vec<Identity>, WorkbenchError> {
    let path = Path::new(arg);
    if path.is_file() {
        return read_identity_file(path);
    }
    let ids = arg
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_one)
        .collect::<Result<Vec<_>, _>>()?;
    if ids.is_empty() {
        return Err(WorkbenchError::Usage(format!("no identities in {arg:?}")));
    }
    Ok(ids)
}
