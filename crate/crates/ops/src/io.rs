//! Reading, writing, fetching and converting collections.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use geoagent_model::{parse_geojson, serialize_geojson, FeatureCollection, Geometry};

use crate::{OpError, Result, WrittenFileReport};

/// Injectable HTTP transport for data retrieval.
pub trait HttpTransport: Send + Sync {
    fn get(&self, url: &str, timeout_ms: u64) -> Result<HttpResponse>;
}

#[derive(Debug, Clone)]
pub struct HttpResponse {
    pub status: u16,
    pub body: Vec<u8>,
}

/// Canned transport: serves queued or path-mapped responses. Used by tests
/// and by the benchmark harness (download tasks resolve against fixtures).
#[derive(Default)]
pub struct CannedTransport {
    responses: Mutex<HashMap<String, HttpResponse>>,
    /// When set, unmatched URLs resolve to `<root>/<basename of url path>`.
    fixture_root: Option<PathBuf>,
}

impl CannedTransport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fixture_root(root: impl Into<PathBuf>) -> Self {
        CannedTransport {
            responses: Mutex::new(HashMap::new()),
            fixture_root: Some(root.into()),
        }
    }

    pub fn insert(&self, url: impl Into<String>, status: u16, body: Vec<u8>) {
        self.responses
            .lock()
            .unwrap()
            .insert(url.into(), HttpResponse { status, body });
    }
}

impl HttpTransport for CannedTransport {
    fn get(&self, url: &str, _timeout_ms: u64) -> Result<HttpResponse> {
        if let Some(resp) = self.responses.lock().unwrap().get(url) {
            return Ok(resp.clone());
        }
        if let Some(root) = &self.fixture_root {
            let name = url.trim_end_matches('/').rsplit('/').next().unwrap_or("");
            let path = root.join(name);
            if path.is_file() {
                let body = std::fs::read(&path)
                    .map_err(|e| OpError::io(path.display().to_string(), e))?;
                return Ok(HttpResponse { status: 200, body });
            }
            return Ok(HttpResponse {
                status: 404,
                body: Vec::new(),
            });
        }
        Err(OpError::Http(format!("no canned response for {url}")))
    }
}

/// Fetch settings for [`fetch_remote_collection`].
#[derive(Debug, Clone)]
pub struct FetchOptions {
    pub timeout_ms: u64,
    pub size_cap_bytes: u64,
}

impl Default for FetchOptions {
    fn default() -> Self {
        FetchOptions {
            timeout_ms: 30_000,
            size_cap_bytes: 256 * 1024 * 1024,
        }
    }
}

/// GET a GeoJSON document over the injected transport and parse it.
pub fn fetch_remote_collection(
    url: &str,
    transport: &dyn HttpTransport,
    opts: &FetchOptions,
) -> Result<FeatureCollection> {
    if !(url.starts_with("http://") || url.starts_with("https://")) {
        return Err(OpError::InvalidArgument(format!(
            "not an http(s) URL: {url}"
        )));
    }
    let resp = transport.get(url, opts.timeout_ms)?;
    if !(200..300).contains(&resp.status) {
        return Err(OpError::HttpStatus {
            status: resp.status,
            url: url.to_string(),
        });
    }
    if resp.body.len() as u64 > opts.size_cap_bytes {
        return Err(OpError::SizeExceeded {
            limit_bytes: opts.size_cap_bytes,
        });
    }
    let text = String::from_utf8(resp.body)
        .map_err(|e| OpError::Http(format!("response is not UTF-8: {e}")))?;
    Ok(parse_geojson(&text)?)
}

/// Read and parse a GeoJSON file.
pub fn read_collection(path: &Path) -> Result<FeatureCollection> {
    let text =
        std::fs::read_to_string(path).map_err(|e| OpError::io(path.display().to_string(), e))?;
    Ok(parse_geojson(&text)?)
}

/// Write a collection; the format comes from the output extension:
/// `.geojson`/`.json`, `.shp` (triplet) or `.csv` (WKT geometry column).
pub fn save_result(fc: &FeatureCollection, path: &Path) -> Result<WrittenFileReport> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .unwrap_or_default();
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() && !parent.exists() {
            std::fs::create_dir_all(parent)
                .map_err(|e| OpError::io(parent.display().to_string(), e))?;
        }
    }
    match ext.as_str() {
        "geojson" | "json" => {
            let text = serialize_geojson(fc);
            std::fs::write(path, text).map_err(|e| OpError::io(path.display().to_string(), e))?;
            Ok(WrittenFileReport {
                paths: vec![path.display().to_string()],
                feature_count: fc.features.len(),
                truncated_fields: Vec::new(),
            })
        }
        "shp" => crate::shapefile::write_shapefile(fc, path),
        "csv" => save_attribute_csv(fc, path),
        other => Err(OpError::UnsupportedExtension(other.to_string())),
    }
}

fn save_attribute_csv(fc: &FeatureCollection, path: &Path) -> Result<WrittenFileReport> {
    // union of property names in first-seen order, then the geometry column
    let mut columns: Vec<String> = Vec::new();
    for f in &fc.features {
        for (name, _) in f.properties.iter() {
            if !columns.contains(name) {
                columns.push(name.clone());
            }
        }
    }
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?;
    let mut header = columns.clone();
    header.push("geometry".to_string());
    writer
        .write_record(&header)
        .map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?;
    for f in &fc.features {
        let mut record: Vec<String> = columns
            .iter()
            .map(|c| f.properties.get(c).map(format_attr).unwrap_or_default())
            .collect();
        record.push(
            f.geometry
                .as_ref()
                .map(crate::wkt::geometry_to_wkt)
                .unwrap_or_default(),
        );
        writer
            .write_record(&record)
            .map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?;
    }
    writer
        .flush()
        .map_err(|e| OpError::io(path.display().to_string(), e))?;
    Ok(WrittenFileReport {
        paths: vec![path.display().to_string()],
        feature_count: fc.features.len(),
        truncated_fields: Vec::new(),
    })
}

pub(crate) fn map_csv_err(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("{other:?}")),
    }
}

pub(crate) fn format_attr(v: &geoagent_model::AttributeValue) -> String {
    use geoagent_model::AttributeValue as A;
    match v {
        A::Null => String::new(),
        A::Bool(b) => b.to_string(),
        A::Number(n) => format!("{n}"),
        A::String(s) => s.clone(),
    }
}

/// Write a table as CSV (RFC 4180, header row, LF endings).
pub fn save_table_csv(table: &crate::TabularData, path: &Path) -> Result<WrittenFileReport> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?;
    writer
        .write_record(&table.columns)
        .map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?;
    for row in &table.rows {
        let record: Vec<String> = table
            .columns
            .iter()
            .map(|c| row.get(c).map(format_attr).unwrap_or_default())
            .collect();
        writer
            .write_record(&record)
            .map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?;
    }
    writer
        .flush()
        .map_err(|e| OpError::io(path.display().to_string(), e))?;
    Ok(WrittenFileReport {
        paths: vec![path.display().to_string()],
        feature_count: table.rows.len(),
        truncated_fields: Vec::new(),
    })
}

/// Read a CSV file into a table. Cells parse as numbers when they look
/// numeric, booleans for `true`/`false`, null when empty, strings otherwise.
pub fn read_table_csv(path: &Path) -> Result<crate::TabularData> {
    let mut reader = csv::ReaderBuilder::new()
        .from_path(path)
        .map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?;
    let columns: Vec<String> = reader
        .headers()
        .map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut table = crate::TabularData::new(columns);
    for record in reader.records() {
        let record = record.map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?;
        let values: Vec<geoagent_model::AttributeValue> = record
            .iter()
            .map(|cell| {
                use geoagent_model::AttributeValue as A;
                if cell.is_empty() {
                    A::Null
                } else if cell == "true" {
                    A::Bool(true)
                } else if cell == "false" {
                    A::Bool(false)
                } else if let Ok(n) = cell.parse::<f64>() {
                    if n.is_finite() {
                        A::Number(n)
                    } else {
                        A::String(cell.to_string())
                    }
                } else {
                    A::String(cell.to_string())
                }
            })
            .collect();
        table.push_row(values);
    }
    Ok(table)
}

/// GeoJSON in, `.geojson`/`.shp`/`.csv` out.
pub fn convert_format(in_path: &Path, out_path: &Path) -> Result<WrittenFileReport> {
    let in_ext = in_path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .unwrap_or_default();
    if !matches!(in_ext.as_str(), "geojson" | "json") {
        return Err(OpError::UnsupportedExtension(format!(
            "conversion input must be GeoJSON, got .{in_ext}"
        )));
    }
    let fc = read_collection(in_path)?;
    save_result(&fc, out_path)
}

/// Write one CSV row per vertex: feature_id, part_index, ring_index,
/// vertex_index, x, y. Ring closures are kept (raw coordinates).
pub fn export_coordinates(fc: &FeatureCollection, path: &Path) -> Result<WrittenFileReport> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?;
    writer
        .write_record(["feature_id", "part_index", "ring_index", "vertex_index", "x", "y"])
        .map_err(|e| OpError::io(path.display().to_string(), map_csv_err(e)))?;
    let mut rows = 0usize;
    for (fid, f) in fc.features.iter().enumerate() {
        let Some(g) = &f.geometry else { continue };
        let mut emit = |part: usize, ring: usize, coords: &[geoagent_model::Pos]| {
            for (vi, p) in coords.iter().enumerate() {
                let record = [
                    fid.to_string(),
                    part.to_string(),
                    ring.to_string(),
                    vi.to_string(),
                    format!("{}", p.x),
                    format!("{}", p.y),
                ];
                writer.write_record(&record).unwrap();
                rows += 1;
            }
        };
        match g {
            Geometry::Point(p) => emit(0, 0, &[*p]),
            Geometry::MultiPoint(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    emit(i, 0, &[*p]);
                }
            }
            Geometry::LineString(ps) => emit(0, 0, ps),
            Geometry::MultiLineString(ls) => {
                for (i, ps) in ls.iter().enumerate() {
                    emit(i, 0, ps);
                }
            }
            Geometry::Polygon(rings) => {
                for (ri, ring) in rings.iter().enumerate() {
                    emit(0, ri, ring);
                }
            }
            Geometry::MultiPolygon(polys) => {
                for (pi, rings) in polys.iter().enumerate() {
                    for (ri, ring) in rings.iter().enumerate() {
                        emit(pi, ri, ring);
                    }
                }
            }
        }
    }
    writer
        .flush()
        .map_err(|e| OpError::io(path.display().to_string(), e))?;
    Ok(WrittenFileReport {
        paths: vec![path.display().to_string()],
        feature_count: rows,
        truncated_fields: Vec::new(),
    })
}
