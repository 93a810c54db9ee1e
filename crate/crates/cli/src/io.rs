use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use bowen::separated::SeparatedSetReport;
use bowen::{parse_rational, CirclePoint, PLCircleMap, Rational};
use serde::de::DeserializeOwned;
use serde::Serialize;

pub const OUT_DIR_VAR: &str = "BOWEN_OUT_DIR";

pub fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

pub fn point_arg(s: &str) -> Result<CirclePoint, String> {
    rational_arg(s).map(|q| CirclePoint::reduce(&q))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_json(&text).with_context(|| format!("in {}", path.display()))
}

/// Parses with a `path: message` error pointing at the offending field.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        anyhow::anyhow!("{}: {}", path, e.into_inner())
    })
}

/// `--map` value: an integer `p` for `×p`, inline JSON, or a JSON file.
pub fn load_map(spec: &str) -> Result<PLCircleMap> {
    let spec = spec.trim();
    if let Ok(p) = spec.parse::<u64>() {
        return PLCircleMap::times_p(p).map_err(Into::into);
    }
    if spec.starts_with('{') {
        return parse_json(spec).context("inline map");
    }
    read_json(Path::new(spec))
}

/// A point set: a JSON list of `"num/den"` strings, or a separated-set
/// report whose points are taken.
pub fn load_points(path: &Path) -> Result<Vec<CirclePoint>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = if text.trim_start().starts_with('[') {
        parse_json::<Vec<CirclePoint>>(&text)
    } else {
        parse_json::<SeparatedSetReport>(&text).map(|r| r.points)
    };
    parsed.with_context(|| format!("in {}", path.display()))
}

/// Where the JSON report goes: `--out`, else `$BOWEN_OUT_DIR/<name>.json`,
/// else nowhere.
pub fn target_path(out: Option<&Path>, name: &str) -> Option<PathBuf> {
    if let Some(p) = out {
        return Some(p.to_path_buf());
    }
    std::env::var_os(OUT_DIR_VAR)
        .filter(|d| !d.is_empty())
        .map(|d| PathBuf::from(d).join(format!("{name}.json")))
}

pub fn meta_path(path: &Path) -> PathBuf {
    path.with_extension("meta.json")
}

#[derive(Serialize)]
struct Meta<'a> {
    tool: &'a str,
    version: &'a str,
    command: &'a str,
    arguments: &'a [String],
    unix_time: u64,
}

/// Writes `contents` atomically (temp file then rename). Existing files are
/// left alone unless `force` is set.
pub fn write_atomic(path: &Path, contents: &[u8], force: bool) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    if force {
        tmp.persist(path)?;
    } else {
        if path.exists() {
            bail!("{} exists; pass --force to replace it", path.display());
        }
        tmp.persist_noclobber(path)?;
    }
    Ok(())
}

/// Report plus its sidecar with version, arguments and time. The report
/// itself holds no timestamps, so reruns give identical bytes.
pub fn save_report(path: &Path, json: &str, command: &str, force: bool) -> Result<()> {
    let arguments: Vec<String> = std::env::args().skip(1).collect();
    let meta = Meta {
        tool: "bowen",
        version: env!("CARGO_PKG_VERSION"),
        command,
        arguments: &arguments,
        unix_time: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    let meta = serde_json::to_string_pretty(&meta)? + "\n";
    let meta_file = meta_path(path);
    if !force && meta_file.exists() {
        bail!("{} exists; pass --force to replace it", meta_file.display());
    }
    write_atomic(path, format!("{json}\n").as_bytes(), force)?;
    write_atomic(&meta_file, meta.as_bytes(), true)?;
    Ok(())
}
