use crate::{CrsRef, ModelError, Pos, Result};

/// WGS84 semi-major axis, meters. Also the Web Mercator sphere radius.
const WGS84_A: f64 = 6_378_137.0;
/// WGS84 flattening.
const WGS84_F: f64 = 1.0 / 298.257_223_563;
/// UTM central scale factor.
const UTM_K0: f64 = 0.9996;
const UTM_FALSE_EASTING: f64 = 500_000.0;
const UTM_FALSE_NORTHING_SOUTH: f64 = 10_000_000.0;

/// Latitude limit of the Web Mercator square, degrees.
pub const WEB_MERCATOR_MAX_LAT: f64 = 85.051_129;
/// Longitude half-width accepted around a UTM central meridian, degrees.
const UTM_MAX_DLON: f64 = 30.0;
/// Latitude limit for UTM, degrees.
const UTM_MAX_LAT: f64 = 84.0;

/// Project a single position between two supported CRSs.
///
/// Non-4326 to non-4326 pairs route through WGS84. Web Mercator is the
/// spherical EPSG:3857 definition; UTM is an ellipsoidal transverse Mercator
/// evaluated with sixth-order series in the third flattening.
pub fn project_point(from: CrsRef, to: CrsRef, p: Pos) -> Result<Pos> {
    if from == CrsRef::None || to == CrsRef::None {
        return Err(ModelError::CrsNone);
    }
    if !from.is_supported() {
        return Err(ModelError::UnsupportedCrs(from.to_string()));
    }
    if !to.is_supported() {
        return Err(ModelError::UnsupportedCrs(to.to_string()));
    }
    if !p.is_finite() {
        return Err(ModelError::NonFinite(format!("({}, {})", p.x, p.y)));
    }
    if from == to {
        return Ok(p);
    }
    let geo = to_wgs84(from, p)?;
    from_wgs84(to, geo)
}

fn to_wgs84(from: CrsRef, p: Pos) -> Result<Pos> {
    match from {
        CrsRef::Epsg(4326) => Ok(p),
        CrsRef::Epsg(3857) => Ok(mercator_inverse(p)),
        crs => {
            let (zone, north) = crs
                .utm_zone()
                .ok_or_else(|| ModelError::UnsupportedCrs(crs.to_string()))?;
            utm_inverse(zone, north, p)
        }
    }
}

fn from_wgs84(to: CrsRef, p: Pos) -> Result<Pos> {
    match to {
        CrsRef::Epsg(4326) => Ok(p),
        CrsRef::Epsg(3857) => mercator_forward(p),
        crs => {
            let (zone, north) = crs
                .utm_zone()
                .ok_or_else(|| ModelError::UnsupportedCrs(crs.to_string()))?;
            utm_forward(zone, north, p)
        }
    }
}

fn mercator_forward(p: Pos) -> Result<Pos> {
    if p.y.abs() >= WEB_MERCATOR_MAX_LAT {
        return Err(ModelError::OutOfDomain(format!(
            "latitude {} exceeds the Web Mercator limit of {WEB_MERCATOR_MAX_LAT}",
            p.y
        )));
    }
    let lon = p.x.to_radians();
    let lat = p.y.to_radians();
    Ok(Pos::new(WGS84_A * lon, WGS84_A * lat.tan().asinh()))
}

fn mercator_inverse(p: Pos) -> Pos {
    Pos::new(
        (p.x / WGS84_A).to_degrees(),
        (p.y / WGS84_A).sinh().atan().to_degrees(),
    )
}

fn utm_central_meridian(zone: u8) -> f64 {
    -183.0 + 6.0 * zone as f64
}

/// Series coefficients for the transverse Mercator expansion in the third
/// flattening n, to sixth order.
struct TmSeries {
    /// Rectifying radius.
    a_cap: f64,
    alpha: [f64; 6],
    beta: [f64; 6],
    /// First eccentricity.
    e: f64,
}

fn tm_series() -> TmSeries {
    let n = WGS84_F / (2.0 - WGS84_F);
    let n2 = n * n;
    let n3 = n2 * n;
    let n4 = n3 * n;
    let n5 = n4 * n;
    let n6 = n5 * n;
    let a_cap =
        WGS84_A / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);
    let alpha = [
        n / 2.0 - 2.0 / 3.0 * n2 + 5.0 / 16.0 * n3 + 41.0 / 180.0 * n4 - 127.0 / 288.0 * n5
            + 7891.0 / 37800.0 * n6,
        13.0 / 48.0 * n2 - 3.0 / 5.0 * n3 + 557.0 / 1440.0 * n4 + 281.0 / 630.0 * n5
            - 1_983_433.0 / 1_935_360.0 * n6,
        61.0 / 240.0 * n3 - 103.0 / 140.0 * n4 + 15061.0 / 26880.0 * n5
            + 167_603.0 / 181_440.0 * n6,
        49561.0 / 161_280.0 * n4 - 179.0 / 168.0 * n5 + 6_601_661.0 / 7_257_600.0 * n6,
        34729.0 / 80640.0 * n5 - 3_418_889.0 / 1_995_840.0 * n6,
        212_378_941.0 / 319_334_400.0 * n6,
    ];
    let beta = [
        n / 2.0 - 2.0 / 3.0 * n2 + 37.0 / 96.0 * n3 - 1.0 / 360.0 * n4 - 81.0 / 512.0 * n5
            + 96199.0 / 604_800.0 * n6,
        1.0 / 48.0 * n2 + 1.0 / 15.0 * n3 - 437.0 / 1440.0 * n4 + 46.0 / 105.0 * n5
            - 1_118_711.0 / 3_870_720.0 * n6,
        17.0 / 480.0 * n3 - 37.0 / 840.0 * n4 - 209.0 / 4480.0 * n5 + 5569.0 / 90720.0 * n6,
        4397.0 / 161_280.0 * n4 - 11.0 / 504.0 * n5 - 830_251.0 / 7_257_600.0 * n6,
        4583.0 / 161_280.0 * n5 - 108_847.0 / 3_991_680.0 * n6,
        20_648_693.0 / 638_668_800.0 * n6,
    ];
    let e = (WGS84_F * (2.0 - WGS84_F)).sqrt();
    TmSeries {
        a_cap,
        alpha,
        beta,
        e,
    }
}

fn utm_forward(zone: u8, north: bool, p: Pos) -> Result<Pos> {
    if p.y.abs() > UTM_MAX_LAT {
        return Err(ModelError::OutOfDomain(format!(
            "latitude {} exceeds the UTM limit of {UTM_MAX_LAT}",
            p.y
        )));
    }
    let cm = utm_central_meridian(zone);
    let mut dlon = p.x - cm;
    // wrap into (-180, 180] so zone 1 accepts longitudes near the antimeridian
    while dlon > 180.0 {
        dlon -= 360.0;
    }
    while dlon < -180.0 {
        dlon += 360.0;
    }
    if dlon.abs() > UTM_MAX_DLON {
        return Err(ModelError::OutOfDomain(format!(
            "longitude {} is {:.3} degrees from the zone {} central meridian (limit {UTM_MAX_DLON})",
            p.x,
            dlon.abs(),
            zone
        )));
    }
    let s = tm_series();
    let phi = p.y.to_radians();
    let lam = dlon.to_radians();

    // conformal latitude
    let t = (phi.sin().atanh() - s.e * (s.e * phi.sin()).atanh()).sinh();
    let xi_p = t.atan2(lam.cos());
    let eta_p = (lam.sin() / t.hypot(lam.cos())).asinh();

    let mut xi = xi_p;
    let mut eta = eta_p;
    for (j, a) in s.alpha.iter().enumerate() {
        let k = 2.0 * (j as f64 + 1.0);
        xi += a * (k * xi_p).sin() * (k * eta_p).cosh();
        eta += a * (k * xi_p).cos() * (k * eta_p).sinh();
    }

    let x = UTM_FALSE_EASTING + UTM_K0 * s.a_cap * eta;
    let mut y = UTM_K0 * s.a_cap * xi;
    if !north {
        y += UTM_FALSE_NORTHING_SOUTH;
    }
    Ok(Pos::new(x, y))
}

fn utm_inverse(zone: u8, north: bool, p: Pos) -> Result<Pos> {
    let s = tm_series();
    let y = if north {
        p.y
    } else {
        p.y - UTM_FALSE_NORTHING_SOUTH
    };
    let xi = y / (UTM_K0 * s.a_cap);
    let eta = (p.x - UTM_FALSE_EASTING) / (UTM_K0 * s.a_cap);

    let mut xi_p = xi;
    let mut eta_p = eta;
    for (j, b) in s.beta.iter().enumerate() {
        let k = 2.0 * (j as f64 + 1.0);
        xi_p -= b * (k * xi).sin() * (k * eta).cosh();
        eta_p -= b * (k * xi).cos() * (k * eta).sinh();
    }

    let tau_p = xi_p.sin() / eta_p.sinh().hypot(xi_p.cos());
    let lam = eta_p.sinh().atan2(xi_p.cos());

    // conformal to geodetic latitude via the standard e^2 series
    let chi = tau_p.atan();
    let e2 = s.e * s.e;
    let e4 = e2 * e2;
    let e6 = e4 * e2;
    let e8 = e6 * e2;
    let phi = chi
        + (e2 / 2.0 + 5.0 * e4 / 24.0 + e6 / 12.0 + 13.0 * e8 / 360.0) * (2.0 * chi).sin()
        + (7.0 * e4 / 48.0 + 29.0 * e6 / 240.0 + 811.0 * e8 / 11520.0) * (4.0 * chi).sin()
        + (7.0 * e6 / 120.0 + 81.0 * e8 / 1120.0) * (6.0 * chi).sin()
        + (4279.0 * e8 / 161_280.0) * (8.0 * chi).sin();

    let lon = utm_central_meridian(zone) + lam.to_degrees();
    Ok(Pos::new(lon, phi.to_degrees()))
}
