//! On-disk cache: `<dir>/series/<key>.csv` with `<key>.manifest.json`, and
//! `<dir>/hn/<n>.json`. Every write goes to a temporary file first and is
//! renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use haruspex_core::enumerator::{EnumerationParams, Manifest, SeriesTable, GENERATOR_VERSION};

use crate::CliError;

pub struct Cache {
    root: PathBuf,
}

pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path.parent().expect("cache paths have a parent");
    fs::create_dir_all(dir)?;
    let name = path.file_name().expect("file name").to_string_lossy();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

impl Cache {
    pub fn new(root: &Path) -> Cache {
        Cache { root: root.to_path_buf() }
    }

    fn series_paths(&self, params: &EnumerationParams) -> (PathBuf, PathBuf) {
        let dir = self.root.join("series");
        let key = params.key();
        (dir.join(format!("{key}.csv")), dir.join(format!("{key}.manifest.json")))
    }

    /// A cached table for exactly these parameters, if present and written
    /// by the current generator.
    pub fn load_series(&self, params: &EnumerationParams) -> Result<Option<SeriesTable>, CliError> {
        let (csv, manifest) = self.series_paths(params);
        if !csv.exists() || !manifest.exists() {
            return Ok(None);
        }
        let m: Manifest = serde_json::from_str(&fs::read_to_string(&manifest)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", manifest.display())))?;
        if m.generator != GENERATOR_VERSION || m.params != *params {
            return Ok(None);
        }
        let table = SeriesTable::from_csv(&fs::read_to_string(&csv)?, &m)
            .map_err(|e| CliError::Input(format!("{}: {e}", csv.display())))?;
        Ok(Some(table))
    }

    pub fn store_series(&self, params: &EnumerationParams, table: &SeriesTable) -> Result<(), CliError> {
        let (csv, manifest) = self.series_paths(params);
        write_atomic(&csv, &table.to_csv())?;
        let text = serde_json::to_string_pretty(&table.manifest(params)).expect("manifest serializes");
        write_atomic(&manifest, &(text + "\n"))
    }

    pub fn store_hn(&self, n: u32, json: &str) -> Result<(), CliError> {
        write_atomic(&self.root.join("hn").join(format!("{n}.json")), json)
    }
}
