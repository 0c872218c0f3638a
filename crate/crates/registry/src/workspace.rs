use std::path::{Component, Path, PathBuf};

use geoagent_ops::OpError;

/// A task workspace: every path argument resolves strictly inside it.
#[derive(Debug, Clone)]
pub struct Workspace {
    root: PathBuf,
}

impl Workspace {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Workspace { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Resolve a workspace-relative path, rejecting absolute paths and any
    /// `..` traversal.
    pub fn resolve(&self, relative: &str) -> Result<PathBuf, OpError> {
        let p = Path::new(relative);
        if p.is_absolute() {
            return Err(OpError::InvalidArgument(format!(
                "path escapes the workspace: {relative}"
            )));
        }
        for component in p.components() {
            match component {
                Component::Normal(_) | Component::CurDir => {}
                _ => {
                    return Err(OpError::InvalidArgument(format!(
                        "path escapes the workspace: {relative}"
                    )))
                }
            }
        }
        Ok(self.root.join(p))
    }
}
