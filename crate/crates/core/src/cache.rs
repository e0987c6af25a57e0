//! On-disk cache of dimension results, one JSON file per `(space, genus, degree)`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::Result;

/// Bumped whenever enumeration or normal-form conventions change.
pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRecord {
    pub version: u32,
    pub space: String,
    pub genus: usize,
    pub degree: usize,
    pub dimension: usize,
    /// `(loop degree, dimension)` when the space is loop graded.
    pub loop_dimensions: Vec<(usize, usize)>,
    /// Standard basis, printed with the expression grammar.
    pub basis: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, space: &str, genus: usize, degree: usize) -> PathBuf {
        let safe: String = space.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        self.dir.join(format!("{safe}-g{genus}-d{degree}-v{CACHE_VERSION}.json"))
    }

    /// A stored record, or `None` if absent, unreadable or from another version.
    pub fn load(&self, space: &str, genus: usize, degree: usize) -> Option<DimensionRecord> {
        let text = fs::read_to_string(self.path(space, genus, degree)).ok()?;
        let rec: DimensionRecord = serde_json::from_str(&text).ok()?;
        (rec.version == CACHE_VERSION && rec.space == space && rec.genus == genus && rec.degree == degree)
            .then_some(rec)
    }

    pub fn store(&self, rec: &DimensionRecord) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(&rec.space, rec.genus, rec.degree);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string_pretty(rec)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_version_guard() {
        let dir = std::env::temp_dir().join(format!("jacobi-cache-test-{}", std::process::id()));
        let cache = Cache::new(&dir);
        let rec = DimensionRecord {
            version: CACHE_VERSION,
            space: "Ac".into(),
            genus: 1,
            degree: 1,
            dimension: 0,
            loop_dimensions: vec![],
            basis: vec![],
        };
        cache.store(&rec).unwrap();
        assert_eq!(cache.load("Ac", 1, 1), Some(rec));
        assert_eq!(cache.load("Ac", 1, 2), None);
        fs::remove_dir_all(dir).unwrap();
    }
}
