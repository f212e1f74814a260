//! File loading and the diagnostics behind exit code 2.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use prox_core::proximity::FiniteProximitySpace;
use prox_core::schema::{SpaceDoc, SpaceSource};
use serde::de::DeserializeOwned;

/// An input problem: which file, which field when known, and why.
#[derive(Debug)]
pub struct InputError {
    pub file: Option<PathBuf>,
    pub field: Option<String>,
    pub reason: String,
}

impl InputError {
    pub fn new(reason: impl Into<String>) -> Self {
        Self {
            file: None,
            field: None,
            reason: reason.into(),
        }
    }

    pub fn in_file(mut self, file: &Path) -> Self {
        self.file.get_or_insert_with(|| file.to_path_buf());
        self
    }

    pub fn at(mut self, field: &str) -> Self {
        self.field.get_or_insert_with(|| field.to_owned());
        self
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{}: ", file.display())?;
        }
        if let Some(field) = &self.field {
            write!(f, "field `{field}`: ")?;
        }
        f.write_str(&self.reason)
    }
}

impl From<prox_core::Error> for InputError {
    fn from(e: prox_core::Error) -> Self {
        Self::new(e.to_string())
    }
}

pub type Input<T> = std::result::Result<T, InputError>;

/// Attaches a file and field to core errors.
pub trait Context<T> {
    fn ctx(self, file: &Path, field: &str) -> Input<T>;
}

impl<T> Context<T> for prox_core::Result<T> {
    fn ctx(self, file: &Path, field: &str) -> Input<T> {
        self.map_err(|e| InputError::from(e).in_file(file).at(field))
    }
}

pub fn read_text(path: &Path) -> Input<String> {
    fs::read_to_string(path).map_err(|e| InputError::new(e.to_string()).in_file(path))
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Input<T> {
    let text = read_text(path)?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let mut err = InputError::new(e.into_inner().to_string()).in_file(path);
        if field != "." && field != "?" {
            err = err.at(&field);
        }
        err
    })
}

fn base_of(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

pub fn load_space(path: &Path) -> Input<FiniteProximitySpace> {
    let doc: SpaceDoc = load_json(path)?;
    doc.build().ctx(path, "points")
}

/// Resolves a space given inline in `file` or by a path relative to it.
pub fn resolve_space(source: &SpaceSource, file: &Path, field: &str) -> Input<FiniteProximitySpace> {
    match source {
        SpaceSource::Inline(doc) => doc.build().ctx(file, field),
        SpaceSource::Path(p) => load_space(&base_of(file).join(p)),
    }
}

/// A loader for core routines that resolve nested space files themselves.
pub fn space_loader(path: &Path) -> prox_core::Result<SpaceDoc> {
    load_json(path).map_err(|e| prox_core::Error::Io(e.to_string()))
}

pub fn base_dir(path: &Path) -> PathBuf {
    base_of(path).to_path_buf()
}

pub fn write_file(path: &Path, contents: &[u8]) -> Input<()> {
    fs::write(path, contents).map_err(|e| InputError::new(e.to_string()).in_file(path))
}

/// `WxH`, both positive.
pub fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or("expected WIDTHxHEIGHT, e.g. 64x64")?;
    let w: usize = w.trim().parse().map_err(|e| format!("width: {e}"))?;
    let h: usize = h.trim().parse().map_err(|e| format!("height: {e}"))?;
    if w == 0 || h == 0 {
        return Err("window sides must be positive".into());
    }
    Ok((w, h))
}

pub fn parse_nonnegative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !v.is_finite() || v < 0.0 {
        return Err(format!("must be a finite nonnegative number, got {s}"));
    }
    Ok(v)
}

pub fn parse_finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !v.is_finite() {
        return Err(format!("must be finite, got {s}"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("8x8"), Ok((8, 8)));
        assert_eq!(parse_window("64X32"), Ok((64, 32)));
        assert!(parse_window("8").is_err());
        assert!(parse_window("0x4").is_err());
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_nonnegative("0.5"), Ok(0.5));
        assert!(parse_nonnegative("-1").is_err());
        assert!(parse_nonnegative("nan").is_err());
        assert_eq!(parse_finite("-1"), Ok(-1.0));
    }

    #[test]
    fn messages_name_file_and_field() {
        let e = InputError::new("bad").in_file(Path::new("a.json")).at("points[0].id");
        assert_eq!(e.to_string(), "a.json: field `points[0].id`: bad");
    }
}
