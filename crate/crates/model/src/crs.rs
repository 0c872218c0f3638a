use crate::{ModelError, Result};

/// Coordinate reference system tag carried by a collection.
///
/// `None` means "coordinate system cleared"; projections refuse it. Supported
/// EPSG codes: 4326 (WGS84 lon/lat degrees), 3857 (Web Mercator meters) and
/// the UTM zones 326zz (north) / 327zz (south) in WGS84 meters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CrsRef {
    #[default]
    None,
    Epsg(u32),
}

impl CrsRef {
    pub const WGS84: CrsRef = CrsRef::Epsg(4326);
    pub const WEB_MERCATOR: CrsRef = CrsRef::Epsg(3857);

    pub fn utm(zone: u8, north: bool) -> CrsRef {
        let base = if north { 32600 } else { 32700 };
        CrsRef::Epsg(base + zone as u32)
    }

    pub fn is_supported(&self) -> bool {
        match self {
            CrsRef::None => true,
            CrsRef::Epsg(code) => {
                matches!(code, 4326 | 3857)
                    || (32601..=32660).contains(code)
                    || (32701..=32760).contains(code)
            }
        }
    }

    /// True when coordinates are degrees rather than meters.
    pub fn is_geographic(&self) -> bool {
        matches!(self, CrsRef::Epsg(4326))
    }

    /// `(zone, north)` when this is a UTM code.
    pub fn utm_zone(&self) -> Option<(u8, bool)> {
        match self {
            CrsRef::Epsg(code) if (32601..=32660).contains(code) => {
                Some(((code - 32600) as u8, true))
            }
            CrsRef::Epsg(code) if (32701..=32760).contains(code) => {
                Some(((code - 32700) as u8, false))
            }
            _ => None,
        }
    }

    /// Parse the `name` string of a legacy GeoJSON crs member.
    pub fn parse_name(name: &str) -> Result<CrsRef> {
        let trimmed = name.trim();
        if trimmed.eq_ignore_ascii_case("urn:ogc:def:crs:OGC:1.3:CRS84") {
            return Ok(CrsRef::Epsg(4326));
        }
        let code_str = trimmed
            .strip_prefix("EPSG:")
            .or_else(|| trimmed.strip_prefix("epsg:"))
            .or_else(|| trimmed.rsplit("EPSG::").next().filter(|_| trimmed.contains("EPSG::")));
        let code: u32 = code_str
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| ModelError::UnsupportedCrs(name.to_string()))?;
        let crs = CrsRef::Epsg(code);
        if !crs.is_supported() {
            return Err(ModelError::UnsupportedCrs(name.to_string()));
        }
        Ok(crs)
    }

    /// The `EPSG:<code>` name written into the legacy crs member.
    pub fn name(&self) -> Option<String> {
        match self {
            CrsRef::None => None,
            CrsRef::Epsg(code) => Some(format!("EPSG:{code}")),
        }
    }
}

impl std::fmt::Display for CrsRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CrsRef::None => write!(f, "none"),
            CrsRef::Epsg(code) => write!(f, "EPSG:{code}"),
        }
    }
}
