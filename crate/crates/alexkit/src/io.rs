//! Input files: presentation text and matrix JSON.
//!
//! A matrix file names the torus variables and lists rows of entry strings:
//!
//! ```json
//! {"vars": ["x1", "x2"], "rows": [["(x2-1)*(x1*x2+1)", "(1-x1)*(x1*x2+1)"]]}
//! ```

use std::path::Path;

use alexkit_core::alexander::{fox_matrix, load_matrix, AlexanderMatrix};
use alexkit_core::presentation::{parse_presentation, GroupPresentation};
use serde::{Deserialize, Serialize};

use crate::{AppError, AppResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub vars: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> AppResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_matrix(&self) -> AppResult<AlexanderMatrix> {
        Ok(load_matrix(&self.vars, &self.rows)?)
    }
}

/// A loaded input together with its Alexander matrix.
#[derive(Clone, Debug)]
pub enum Input {
    Presentation(GroupPresentation),
    Matrix(MatrixFile),
}

impl Input {
    pub fn matrix(&self) -> AppResult<AlexanderMatrix> {
        match self {
            Input::Presentation(p) => Ok(fox_matrix(p)?),
            Input::Matrix(f) => f.to_matrix(),
        }
    }
}

pub fn read_text(path: &Path) -> AppResult<String> {
    std::fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_input(path: &Path, matrix: bool) -> AppResult<Input> {
    let text = read_text(path)?;
    if matrix {
        Ok(Input::Matrix(MatrixFile::parse(&text)?))
    } else {
        Ok(Input::Presentation(parse_presentation(&text)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_roundtrip() {
        let text = r#"{"vars":["x","y"],"rows":[["y-1","1-x"]]}"#;
        let f = MatrixFile::parse(text).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), text);
        let m = f.to_matrix().unwrap();
        assert_eq!((m.num_rows(), m.num_cols(), m.nvars()), (1, 2, 2));
    }

    #[test]
    fn matrix_json_errors() {
        assert!(matches!(MatrixFile::parse("{\"vars\":[]}"), Err(AppError::Json(_))));
        let f = MatrixFile::parse(r#"{"vars":["x"],"rows":[["x","y"]]}"#).unwrap();
        assert!(matches!(f.to_matrix(), Err(AppError::Core(_))));
        let f = MatrixFile::parse(r#"{"vars":["x"],"rows":[["x"],["x","1"]]}"#).unwrap();
        assert_eq!(f.to_matrix().unwrap_err().exit_code(), 2);
    }
}
