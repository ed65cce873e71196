//! On-disk class lists in the HGR1 format.

use std::fs::{self, OpenOptions};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use turankit::hypergraph::hgr1;
use turankit::{Catalog, ClassFilter, Exec};

pub const ENV_VAR: &str = "TURANKIT_CACHE";
pub const DEFAULT_DIR: &str = ".hgr-cache";

pub fn resolve_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR))
}

pub fn file_name(n: usize, k: usize, filter: ClassFilter) -> String {
    format!("hgr1-k{k}-n{n}-{}.txt", filter.tag())
}

pub fn path_for(dir: &Path, n: usize, k: usize, filter: ClassFilter) -> PathBuf {
    dir.join(file_name(n, k, filter))
}

pub fn read(path: &Path) -> Result<Catalog> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    hgr1::read(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

/// Writes through an exclusively created temporary file, then renames it
/// into place so readers never see a partial list.
pub fn write(path: &Path, catalog: &Catalog) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    let mut file = OpenOptions::new()
        .write(true)
        .create_new(true)
        .open(&tmp)
        .with_context(|| format!("creating {}", tmp.display()))?;
    let written = hgr1::write(&mut file, catalog).and_then(|()| file.sync_all());
    drop(file);
    if let Err(e) = written {
        let _ = fs::remove_file(&tmp);
        return Err(e).with_context(|| format!("writing {}", tmp.display()));
    }
    fs::rename(&tmp, path).with_context(|| format!("moving {} into place", tmp.display()))?;
    Ok(())
}

/// Cached list if present and consistent, otherwise a fresh enumeration
/// that is then stored.
pub fn load_or_build(
    exec: Exec,
    dir: &Path,
    n: usize,
    k: usize,
    filter: ClassFilter,
) -> Result<(Catalog, PathBuf, bool)> {
    let path = path_for(dir, n, k, filter);
    if path.exists() {
        let catalog = read(&path)?;
        if catalog.n() != n || catalog.k() != k || catalog.filter() != filter {
            bail!("{} holds a different class list", path.display());
        }
        return Ok((catalog, path, true));
    }
    let catalog = Catalog::with_exec(exec, n, k, filter)?;
    write(&path, &catalog)?;
    Ok((catalog, path, false))
}
