use std::collections::{HashMap, HashSet};
use std::path::{Component, Path, PathBuf};

use super::{parse_units, ParsedFile, SourceUnit};
use crate::error::FofError;

/// Fetches file contents for include resolution.
pub trait SourceLoader {
    fn load(&self, path: &Path) -> Result<String, String>;
}

/// Reads from disk. Files that do not exist are looked up in `catalog_dir`
/// by file name, then among the embedded catalogs.
#[derive(Debug, Clone, Default)]
pub struct FsLoader {
    pub catalog_dir: Option<PathBuf>,
}

impl FsLoader {
    pub fn from_env() -> Self {
        FsLoader {
            catalog_dir: std::env::var_os(crate::catalog::CATALOG_DIR_VAR).map(PathBuf::from),
        }
    }
}

impl SourceLoader for FsLoader {
    fn load(&self, path: &Path) -> Result<String, String> {
        match std::fs::read_to_string(path) {
            Ok(s) => return Ok(s),
            Err(e) if e.kind() != std::io::ErrorKind::NotFound => return Err(e.to_string()),
            Err(_) => {}
        }
        let file_name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
        if let Some(dir) = &self.catalog_dir {
            if let Ok(s) = std::fs::read_to_string(dir.join(file_name)) {
                return Ok(s);
            }
        }
        crate::catalog::embedded_file(file_name)
            .map(str::to_string)
            .ok_or_else(|| "file not found".to_string())
    }
}

/// In-memory file system for tests and embedding.
#[derive(Debug, Clone, Default)]
pub struct MemoryLoader {
    files: HashMap<PathBuf, String>,
}

impl MemoryLoader {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, path: impl AsRef<Path>, text: &str) -> Self {
        self.files.insert(normalize(path.as_ref()), text.to_string());
        self
    }
}

impl SourceLoader for MemoryLoader {
    fn load(&self, path: &Path) -> Result<String, String> {
        self.files
            .get(&normalize(path))
            .cloned()
            .ok_or_else(|| "file not found".to_string())
    }
}

fn normalize(path: &Path) -> PathBuf {
    let mut out = PathBuf::new();
    for c in path.components() {
        match c {
            Component::CurDir => {}
            Component::ParentDir => {
                if !out.pop() {
                    out.push("..");
                }
            }
            other => out.push(other.as_os_str()),
        }
    }
    out
}

/// Expands includes depth first: the units of an included file come before
/// the units of the file that includes it. `path` is the location of the
/// already-parsed `file`; include paths are relative to its directory.
pub fn resolve_includes(
    file: ParsedFile,
    path: &Path,
    loader: &dyn SourceLoader,
) -> Result<Vec<SourceUnit>, FofError> {
    let mut out = Vec::new();
    let mut stack = vec![normalize(path)];
    expand(file, path, loader, &mut stack, &mut out)?;
    let mut names = HashSet::new();
    for u in &out {
        if !names.insert(u.name.as_str()) {
            return Err(FofError::DuplicateUnit {
                pos: crate::error::Position {
                    path: u.origin.path.clone(),
                    line: u.origin.line,
                    column: 1,
                },
                name: u.name.clone(),
            });
        }
    }
    Ok(out)
}

/// Reads, parses and resolves the file at `path`.
pub fn load_file(path: &Path, loader: &dyn SourceLoader) -> Result<Vec<SourceUnit>, FofError> {
    let text = loader.load(path).map_err(|message| FofError::MissingFile {
        path: path.to_path_buf(),
        message,
    })?;
    let parsed = parse_units(&text, path)?;
    resolve_includes(parsed, path, loader)
}

fn expand(
    file: ParsedFile,
    path: &Path,
    loader: &dyn SourceLoader,
    stack: &mut Vec<PathBuf>,
    out: &mut Vec<SourceUnit>,
) -> Result<(), FofError> {
    let dir = path.parent().unwrap_or(Path::new(""));
    for inc in file.includes {
        let target = normalize(&dir.join(&inc.path));
        if stack.contains(&target) {
            return Err(FofError::IncludeCycle { path: target });
        }
        let text = loader.load(&target).map_err(|message| FofError::MissingFile {
            path: target.clone(),
            message,
        })?;
        let parsed = parse_units(&text, &target)?;
        stack.push(target.clone());
        expand(parsed, &target, loader, stack, out)?;
        stack.pop();
    }
    out.extend(file.units);
    Ok(())
}
