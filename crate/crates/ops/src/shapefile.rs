//! Shapefile triplet writer (.shp/.shx/.dbf) for shape types 1/3/5, plus a
//! minimal reader used by round-trip verification only.
//!
//! Layout per the ESRI specification: big-endian record headers and file
//! lengths (in 16-bit words), little-endian record contents. Polygon rings
//! are written in ESRI orientation (outer clockwise, holes counterclockwise)
//! regardless of the GeoJSON orientation in memory.

use std::path::Path;

use byteorder::{BigEndian, LittleEndian, WriteBytesExt};
use geoagent_model::{
    AttributeValue, BBox, Feature, FeatureCollection, Geometry, GeometryKind, Pos,
};

use crate::{OpError, Result, WrittenFileReport};

const FILE_CODE: i32 = 9994;
const VERSION: i32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ShapeType {
    Point = 1,
    PolyLine = 3,
    Polygon = 5,
}

fn shape_type_for(fc: &FeatureCollection) -> Result<ShapeType> {
    let mut kinds = std::collections::BTreeSet::new();
    for f in &fc.features {
        if let Some(g) = &f.geometry {
            kinds.insert(match g.kind() {
                GeometryKind::Point => ShapeType::Point as i32,
                GeometryKind::LineString | GeometryKind::MultiLineString => {
                    ShapeType::PolyLine as i32
                }
                GeometryKind::Polygon | GeometryKind::MultiPolygon => ShapeType::Polygon as i32,
                GeometryKind::MultiPoint => {
                    return Err(OpError::KindMismatch(
                        "MultiPoint is not supported by the shapefile writer".into(),
                    ))
                }
            });
        }
    }
    match kinds.len() {
        0 => Err(OpError::EmptyInput("no geometry to write".into())),
        1 => Ok(match kinds.into_iter().next().unwrap() {
            1 => ShapeType::Point,
            3 => ShapeType::PolyLine,
            _ => ShapeType::Polygon,
        }),
        _ => Err(OpError::KindMismatch(
            "shapefile requires a single geometry kind".into(),
        )),
    }
}

/// Write the `.shp`/`.shx`/`.dbf` triplet next to `shp_path`.
pub fn write_shapefile(fc: &FeatureCollection, shp_path: &Path) -> Result<WrittenFileReport> {
    let shape_type = shape_type_for(fc)?;
    let bbox = fc.bbox().unwrap_or(BBox {
        minx: 0.0,
        miny: 0.0,
        maxx: 0.0,
        maxy: 0.0,
    });

    // record contents first, so file lengths are known up front
    let mut records: Vec<Vec<u8>> = Vec::new();
    for f in &fc.features {
        let Some(g) = &f.geometry else {
            continue;
        };
        records.push(shape_record(g, shape_type)?);
    }

    let shp_len_words = {
        let body: usize = records.iter().map(|r| 8 + r.len()).sum();
        (100 + body) / 2
    };
    let shx_len_words = (100 + 8 * records.len()) / 2;

    let mut shp: Vec<u8> = Vec::new();
    let mut shx: Vec<u8> = Vec::new();
    write_main_header(&mut shp, shp_len_words as i32, shape_type, &bbox)?;
    write_main_header(&mut shx, shx_len_words as i32, shape_type, &bbox)?;

    let mut offset_words: i32 = 50;
    for (i, rec) in records.iter().enumerate() {
        let content_words = (rec.len() / 2) as i32;
        shx.write_i32::<BigEndian>(offset_words)?;
        shx.write_i32::<BigEndian>(content_words)?;
        shp.write_i32::<BigEndian>((i + 1) as i32)?;
        shp.write_i32::<BigEndian>(content_words)?;
        shp.extend_from_slice(rec);
        offset_words += 4 + content_words;
    }

    let (dbf, truncated) = build_dbf(fc)?;

    let shx_path = shp_path.with_extension("shx");
    let dbf_path = shp_path.with_extension("dbf");
    std::fs::write(shp_path, &shp).map_err(|e| OpError::io(shp_path.display().to_string(), e))?;
    std::fs::write(&shx_path, &shx).map_err(|e| OpError::io(shx_path.display().to_string(), e))?;
    std::fs::write(&dbf_path, &dbf).map_err(|e| OpError::io(dbf_path.display().to_string(), e))?;

    Ok(WrittenFileReport {
        paths: vec![
            shp_path.display().to_string(),
            shx_path.display().to_string(),
            dbf_path.display().to_string(),
        ],
        feature_count: records.len(),
        truncated_fields: truncated,
    })
}

fn write_main_header(
    out: &mut Vec<u8>,
    file_len_words: i32,
    shape_type: ShapeType,
    bbox: &BBox,
) -> Result<()> {
    out.write_i32::<BigEndian>(FILE_CODE)?;
    for _ in 0..5 {
        out.write_i32::<BigEndian>(0)?;
    }
    out.write_i32::<BigEndian>(file_len_words)?;
    out.write_i32::<LittleEndian>(VERSION)?;
    out.write_i32::<LittleEndian>(shape_type as i32)?;
    out.write_f64::<LittleEndian>(bbox.minx)?;
    out.write_f64::<LittleEndian>(bbox.miny)?;
    out.write_f64::<LittleEndian>(bbox.maxx)?;
    out.write_f64::<LittleEndian>(bbox.maxy)?;
    // z and m ranges are zero for 2-D shapes
    for _ in 0..4 {
        out.write_f64::<LittleEndian>(0.0)?;
    }
    Ok(())
}

fn shape_record(g: &Geometry, shape_type: ShapeType) -> Result<Vec<u8>> {
    let mut rec: Vec<u8> = Vec::new();
    rec.write_i32::<LittleEndian>(shape_type as i32)?;
    match shape_type {
        ShapeType::Point => {
            let Geometry::Point(p) = g else {
                return Err(OpError::KindMismatch(
                    "mixed geometry kinds in shapefile record".into(),
                ));
            };
            rec.write_f64::<LittleEndian>(p.x)?;
            rec.write_f64::<LittleEndian>(p.y)?;
        }
        ShapeType::PolyLine => {
            let parts: Vec<Vec<Pos>> = match g {
                Geometry::LineString(ps) => vec![ps.clone()],
                Geometry::MultiLineString(ls) => ls.clone(),
                _ => {
                    return Err(OpError::KindMismatch(
                        "mixed geometry kinds in shapefile record".into(),
                    ))
                }
            };
            write_multipart(&mut rec, &parts)?;
        }
        ShapeType::Polygon => {
            let mut parts: Vec<Vec<Pos>> = Vec::new();
            let rings: Vec<&Vec<Pos>> = match g {
                Geometry::Polygon(rings) => rings.iter().collect(),
                Geometry::MultiPolygon(polys) => polys.iter().flatten().collect(),
                _ => {
                    return Err(OpError::KindMismatch(
                        "mixed geometry kinds in shapefile record".into(),
                    ))
                }
            };
            for ring in rings {
                // ESRI winding is the reverse of the normalized GeoJSON one
                let mut r = ring.clone();
                r.reverse();
                parts.push(r);
            }
            write_multipart(&mut rec, &parts)?;
        }
    }
    Ok(rec)
}

fn write_multipart(rec: &mut Vec<u8>, parts: &[Vec<Pos>]) -> Result<()> {
    let mut bbox: Option<BBox> = None;
    for p in parts.iter().flatten() {
        match &mut bbox {
            Some(b) => b.expand(*p),
            None => bbox = Some(BBox::from_point(*p)),
        }
    }
    let bbox = bbox.ok_or_else(|| OpError::EmptyInput("empty shape".into()))?;
    rec.write_f64::<LittleEndian>(bbox.minx)?;
    rec.write_f64::<LittleEndian>(bbox.miny)?;
    rec.write_f64::<LittleEndian>(bbox.maxx)?;
    rec.write_f64::<LittleEndian>(bbox.maxy)?;
    rec.write_i32::<LittleEndian>(parts.len() as i32)?;
    let total: usize = parts.iter().map(|p| p.len()).sum();
    rec.write_i32::<LittleEndian>(total as i32)?;
    let mut start = 0i32;
    for part in parts {
        rec.write_i32::<LittleEndian>(start)?;
        start += part.len() as i32;
    }
    for p in parts.iter().flatten() {
        rec.write_f64::<LittleEndian>(p.x)?;
        rec.write_f64::<LittleEndian>(p.y)?;
    }
    Ok(())
}

// ---------------------------------------------------------------- DBF

#[derive(Debug, Clone)]
struct DbfField {
    name: String,
    kind: u8, // b'C' or b'N'
    width: u8,
    decimals: u8,
}

/// Field names are capped at 10 bytes; collisions after truncation get a
/// numeric suffix.
fn dbf_field_names(names: &[String]) -> Vec<(String, String)> {
    let mut used: Vec<String> = Vec::new();
    let mut out = Vec::new();
    for name in names {
        let mut short: String = name.chars().take(10).collect();
        while short.len() > 10 {
            short.pop();
        }
        if used.contains(&short) {
            for n in 1..100u32 {
                let suffix = format!("_{n}");
                let keep = 10usize.saturating_sub(suffix.len());
                let mut candidate: String = name.chars().take(keep).collect();
                candidate.push_str(&suffix);
                if !used.contains(&candidate) {
                    short = candidate;
                    break;
                }
            }
        }
        used.push(short.clone());
        out.push((name.clone(), short));
    }
    out
}

fn build_dbf(fc: &FeatureCollection) -> Result<(Vec<u8>, Vec<(String, String)>)> {
    let mut columns: Vec<String> = Vec::new();
    for f in &fc.features {
        for (name, _) in f.properties.iter() {
            if !columns.contains(name) {
                columns.push(name.clone());
            }
        }
    }
    let name_map = dbf_field_names(&columns);
    let truncated: Vec<(String, String)> = name_map
        .iter()
        .filter(|(a, b)| a != b)
        .cloned()
        .collect();

    let mut fields: Vec<DbfField> = Vec::new();
    for (orig, short) in &name_map {
        let mut numeric = true;
        let mut integral = true;
        let mut max_text = 1usize;
        for f in &fc.features {
            match f.properties.get(orig) {
                Some(AttributeValue::Number(n)) => {
                    if n.fract() != 0.0 {
                        integral = false;
                    }
                }
                Some(AttributeValue::Null) | None => {}
                Some(other) => {
                    numeric = false;
                    max_text = max_text.max(crate::io::format_attr(other).len());
                }
            }
        }
        fields.push(if numeric {
            DbfField {
                name: short.clone(),
                kind: b'N',
                width: 18,
                decimals: if integral { 0 } else { 6 },
            }
        } else {
            DbfField {
                name: short.clone(),
                kind: b'C',
                width: max_text.min(254) as u8,
                decimals: 0,
            }
        });
    }

    let record_size: usize = 1 + fields.iter().map(|f| f.width as usize).sum::<usize>();
    let header_size = 32 + 32 * fields.len() + 1;
    let mut out: Vec<u8> = Vec::new();
    out.push(0x03);
    out.extend_from_slice(&[124, 1, 1]); // fixed YY MM DD so output bytes are stable
    out.write_u32::<LittleEndian>(fc.features.len() as u32)?;
    out.write_u16::<LittleEndian>(header_size as u16)?;
    out.write_u16::<LittleEndian>(record_size as u16)?;
    out.extend_from_slice(&[0u8; 20]);

    for f in &fields {
        let mut name_bytes = [0u8; 11];
        for (i, b) in f.name.as_bytes().iter().take(10).enumerate() {
            name_bytes[i] = *b;
        }
        out.extend_from_slice(&name_bytes);
        out.push(f.kind);
        out.extend_from_slice(&[0u8; 4]);
        out.push(f.width);
        out.push(f.decimals);
        out.extend_from_slice(&[0u8; 14]);
    }
    out.push(0x0D);

    for feat in &fc.features {
        out.push(b' '); // not deleted
        for (field, (orig, _)) in fields.iter().zip(&name_map) {
            let cell = render_dbf_cell(feat, orig, field);
            out.extend_from_slice(&cell);
        }
    }
    out.push(0x1A);
    Ok((out, truncated))
}

fn render_dbf_cell(feat: &Feature, column: &str, field: &DbfField) -> Vec<u8> {
    let width = field.width as usize;
    let value = feat.properties.get(column);
    match field.kind {
        b'N' => {
            let text = match value {
                Some(AttributeValue::Number(n)) => {
                    if field.decimals == 0 {
                        format!("{}", *n as i64)
                    } else {
                        format!("{:.*}", field.decimals as usize, n)
                    }
                }
                _ => String::new(),
            };
            let mut cell = vec![b' '; width];
            let bytes = text.as_bytes();
            let n = bytes.len().min(width);
            cell[width - n..].copy_from_slice(&bytes[bytes.len() - n..]);
            cell
        }
        _ => {
            let text = value.map(crate::io::format_attr).unwrap_or_default();
            let mut cell = vec![b' '; width];
            let bytes = text.as_bytes();
            let n = bytes.len().min(width);
            cell[..n].copy_from_slice(&bytes[..n]);
            cell
        }
    }
}

// ---------------------------------------------------------------- reader

/// Minimal shapefile reader — only here so round-trip tests can verify the
/// writer. Reads types 1/3/5 and C/N DBF fields.
pub mod reader {
    use byteorder::{BigEndian, LittleEndian, ReadBytesExt};
    use geoagent_model::{
        AttributeValue, CrsRef, Feature, FeatureCollection, Geometry, Pos, Properties,
    };
    use std::io::{Cursor, Read, Seek, SeekFrom};
    use std::path::Path;

    use crate::{OpError, Result};

    pub fn read_shapefile(shp_path: &Path) -> Result<FeatureCollection> {
        let shp = std::fs::read(shp_path)
            .map_err(|e| OpError::io(shp_path.display().to_string(), e))?;
        let dbf_path = shp_path.with_extension("dbf");
        let dbf = std::fs::read(&dbf_path)
            .map_err(|e| OpError::io(dbf_path.display().to_string(), e))?;

        let geometries = read_shp(&shp)?;
        let rows = read_dbf(&dbf)?;
        let mut fc = FeatureCollection::new(CrsRef::None);
        for (i, g) in geometries.into_iter().enumerate() {
            let props = rows.get(i).cloned().unwrap_or_default();
            fc.features.push(Feature::with_properties(g, props));
        }
        fc.normalize()?;
        Ok(fc)
    }

    fn read_shp(bytes: &[u8]) -> Result<Vec<Geometry>> {
        let mut cur = Cursor::new(bytes);
        let file_code = cur.read_i32::<BigEndian>()?;
        if file_code != super::FILE_CODE {
            return Err(OpError::InvalidArgument(format!(
                "bad shapefile code {file_code}"
            )));
        }
        cur.seek(SeekFrom::Start(24))?;
        let file_len_words = cur.read_i32::<BigEndian>()? as u64;
        cur.seek(SeekFrom::Start(100))?;
        let mut out = Vec::new();
        while cur.position() < file_len_words * 2 {
            let _rec_no = cur.read_i32::<BigEndian>()?;
            let content_words = cur.read_i32::<BigEndian>()?;
            let end = cur.position() + content_words as u64 * 2;
            let shape_type = cur.read_i32::<LittleEndian>()?;
            let g = match shape_type {
                1 => {
                    let x = cur.read_f64::<LittleEndian>()?;
                    let y = cur.read_f64::<LittleEndian>()?;
                    Geometry::Point(Pos::new(x, y))
                }
                3 | 5 => {
                    // skip the shape bbox
                    for _ in 0..4 {
                        cur.read_f64::<LittleEndian>()?;
                    }
                    let num_parts = cur.read_i32::<LittleEndian>()? as usize;
                    let num_points = cur.read_i32::<LittleEndian>()? as usize;
                    let mut starts = Vec::with_capacity(num_parts);
                    for _ in 0..num_parts {
                        starts.push(cur.read_i32::<LittleEndian>()? as usize);
                    }
                    let mut points = Vec::with_capacity(num_points);
                    for _ in 0..num_points {
                        let x = cur.read_f64::<LittleEndian>()?;
                        let y = cur.read_f64::<LittleEndian>()?;
                        points.push(Pos::new(x, y));
                    }
                    let mut parts: Vec<Vec<Pos>> = Vec::new();
                    for (i, &s) in starts.iter().enumerate() {
                        let e = starts.get(i + 1).copied().unwrap_or(num_points);
                        parts.push(points[s..e].to_vec());
                    }
                    if shape_type == 3 {
                        if parts.len() == 1 {
                            Geometry::LineString(parts.pop().unwrap())
                        } else {
                            Geometry::MultiLineString(parts)
                        }
                    } else {
                        // group rings: clockwise = outer, otherwise hole of
                        // the most recent outer (writer order is outer-first)
                        let mut polys: Vec<Vec<Vec<Pos>>> = Vec::new();
                        for part in parts {
                            let area2: f64 = part
                                .windows(2)
                                .map(|w| w[0].x * w[1].y - w[1].x * w[0].y)
                                .sum();
                            let is_outer = area2 < 0.0;
                            if is_outer || polys.is_empty() {
                                polys.push(vec![part]);
                            } else {
                                polys.last_mut().unwrap().push(part);
                            }
                        }
                        if polys.len() == 1 {
                            Geometry::Polygon(polys.pop().unwrap())
                        } else {
                            Geometry::MultiPolygon(polys)
                        }
                    }
                }
                other => {
                    return Err(OpError::InvalidArgument(format!(
                        "unsupported shape type {other}"
                    )))
                }
            };
            out.push(g);
            cur.seek(SeekFrom::Start(end))?;
        }
        Ok(out)
    }

    fn read_dbf(bytes: &[u8]) -> Result<Vec<Properties>> {
        let mut cur = Cursor::new(bytes);
        let _version = cur.read_u8()?;
        let mut date = [0u8; 3];
        cur.read_exact(&mut date)?;
        let num_records = cur.read_u32::<LittleEndian>()? as usize;
        let header_size = cur.read_u16::<LittleEndian>()? as u64;
        let record_size = cur.read_u16::<LittleEndian>()? as usize;
        cur.seek(SeekFrom::Start(32))?;

        struct F {
            name: String,
            kind: u8,
            width: usize,
            decimals: u8,
        }
        let mut fields = Vec::new();
        while cur.position() < header_size - 1 {
            let mut name_bytes = [0u8; 11];
            cur.read_exact(&mut name_bytes)?;
            if name_bytes[0] == 0x0D {
                break;
            }
            let name = String::from_utf8_lossy(&name_bytes)
                .trim_end_matches('\0')
                .to_string();
            let kind = cur.read_u8()?;
            let mut skip = [0u8; 4];
            cur.read_exact(&mut skip)?;
            let width = cur.read_u8()? as usize;
            let decimals = cur.read_u8()?;
            let mut tail = [0u8; 14];
            cur.read_exact(&mut tail)?;
            fields.push(F {
                name,
                kind,
                width,
                decimals,
            });
        }
        cur.seek(SeekFrom::Start(header_size))?;
        let mut rows = Vec::with_capacity(num_records);
        for _ in 0..num_records {
            let mut rec = vec![0u8; record_size];
            cur.read_exact(&mut rec)?;
            let mut props = Properties::new();
            let mut at = 1usize;
            for f in &fields {
                let raw = String::from_utf8_lossy(&rec[at..at + f.width]).to_string();
                at += f.width;
                let trimmed = raw.trim();
                let value = if trimmed.is_empty() {
                    AttributeValue::Null
                } else if f.kind == b'N' {
                    AttributeValue::Number(trimmed.parse::<f64>().map_err(|_| {
                        OpError::InvalidArgument(format!("bad numeric cell {trimmed:?}"))
                    })?)
                } else if f.decimals == 0 && (trimmed == "true" || trimmed == "false") {
                    AttributeValue::Bool(trimmed == "true")
                } else {
                    AttributeValue::String(trimmed.to_string())
                };
                props.insert(f.name.clone(), value);
            }
            rows.push(props);
        }
        Ok(rows)
    }
}
