//! Deterministic SVG rendering: maps (with optional quantile choropleth)
//! and simple bar/scatter charts.

use std::path::Path;

use geoagent_model::{BBox, FeatureCollection, Geometry, Pos};

use crate::table::TabularData;
use crate::{OpError, Result, WrittenFileReport};

/// Layer styling. `choropleth_field` switches fills to quantile classes of
/// that numeric field using the fixed ramp.
#[derive(Debug, Clone)]
pub struct LayerStyle {
    pub fill: String,
    pub stroke: String,
    pub stroke_width: f64,
    pub marker_radius: f64,
    pub choropleth_field: Option<String>,
    pub choropleth_classes: usize,
}

impl Default for LayerStyle {
    fn default() -> Self {
        LayerStyle {
            fill: "#88aadd".into(),
            stroke: "#333333".into(),
            stroke_width: 1.0,
            marker_radius: 3.0,
            choropleth_field: None,
            choropleth_classes: 5,
        }
    }
}

/// Fixed sequential ramp used for choropleth classes.
const COLOR_RAMP: [&str; 9] = [
    "#f7fbff", "#deebf7", "#c6dbef", "#9ecae1", "#6baed6", "#4292c6", "#2171b5", "#08519c",
    "#08306b",
];

const CANVAS: f64 = 800.0;

/// Render layers to an SVG map. The viewBox is the union bbox padded 5%;
/// the y axis is flipped so north is up. Every feature renders as exactly
/// one `<path>` element.
pub fn render_map_svg(
    layers: &[(&FeatureCollection, LayerStyle)],
    out_path: &Path,
) -> Result<WrittenFileReport> {
    if layers.iter().all(|(fc, _)| fc.features.is_empty()) {
        return Err(OpError::EmptyInput("no features to render".into()));
    }
    let mut bbox: Option<BBox> = None;
    for (fc, _) in layers {
        if let Some(b) = fc.bbox() {
            match &mut bbox {
                Some(acc) => acc.merge(&b),
                None => bbox = Some(b),
            }
        }
    }
    let bbox = bbox.ok_or_else(|| OpError::EmptyInput("empty bounding box".into()))?;
    let pad_x = (bbox.width() * 0.05).max(1e-9);
    let pad_y = (bbox.height() * 0.05).max(1e-9);
    let view = BBox {
        minx: bbox.minx - pad_x,
        miny: bbox.miny - pad_y,
        maxx: bbox.maxx + pad_x,
        maxy: bbox.maxy + pad_y,
    };
    let scale = CANVAS / view.width().max(view.height());
    let width = view.width() * scale;
    let height = view.height() * scale;
    let tx = |p: Pos| -> (f64, f64) {
        (
            (p.x - view.minx) * scale,
            // y grows downward in SVG
            (view.maxy - p.y) * scale,
        )
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\">\n",
        fmt(width),
        fmt(height)
    ));

    let mut feature_paths = 0usize;
    let mut legend: Vec<(String, String)> = Vec::new();
    for (fc, style) in layers {
        let classes = style.choropleth_field.as_ref().map(|field| {
            let breaks = quantile_breaks(fc, field, style.choropleth_classes);
            (field.clone(), breaks)
        });
        if let Some((field, breaks)) = &classes {
            for (i, w) in breaks.windows(2).enumerate() {
                legend.push((
                    ramp_color(i, breaks.len() - 1).to_string(),
                    format!("{field} {} – {}", fmt(w[0]), fmt(w[1])),
                ));
            }
        }
        for f in &fc.features {
            let Some(g) = &f.geometry else { continue };
            let fill = match &classes {
                Some((field, breaks)) => {
                    let v = f.properties.get(field).and_then(|v| v.as_number());
                    match v {
                        Some(v) => ramp_color(class_of(v, breaks), breaks.len() - 1).to_string(),
                        None => "#cccccc".to_string(),
                    }
                }
                None => style.fill.clone(),
            };
            let d = geometry_path(g, &tx, style.marker_radius);
            svg.push_str(&format!(
                "<path class=\"feature\" d=\"{d}\" fill=\"{fill}\" stroke=\"{}\" stroke-width=\"{}\" fill-rule=\"evenodd\"/>\n",
                style.stroke,
                fmt(style.stroke_width)
            ));
            feature_paths += 1;
        }
    }
    if !legend.is_empty() {
        svg.push_str("<g class=\"legend\">\n");
        for (i, (color, label)) in legend.iter().enumerate() {
            let y = 10.0 + i as f64 * 18.0;
            svg.push_str(&format!(
                "<rect x=\"10\" y=\"{}\" width=\"14\" height=\"14\" fill=\"{color}\" stroke=\"#333333\"/>\n",
                fmt(y)
            ));
            svg.push_str(&format!(
                "<text x=\"30\" y=\"{}\" font-size=\"12\">{}</text>\n",
                fmt(y + 11.0),
                xml_escape(label)
            ));
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    std::fs::write(out_path, svg).map_err(|e| OpError::io(out_path.display().to_string(), e))?;
    Ok(WrittenFileReport {
        paths: vec![out_path.display().to_string()],
        feature_count: feature_paths,
        truncated_fields: Vec::new(),
    })
}

fn geometry_path(g: &Geometry, tx: &dyn Fn(Pos) -> (f64, f64), r: f64) -> String {
    let mut d = String::new();
    let push_circle = |p: Pos, d: &mut String| {
        let (cx, cy) = tx(p);
        // a closed path tracing the marker circle
        d.push_str(&format!(
            "M {} {} a {r} {r} 0 1 0 {} 0 a {r} {r} 0 1 0 {} 0 Z ",
            fmt(cx - r),
            fmt(cy),
            fmt(2.0 * r),
            fmt(-2.0 * r),
        ));
    };
    let push_path = |ps: &[Pos], close: bool, d: &mut String| {
        for (i, p) in ps.iter().enumerate() {
            let (x, y) = tx(*p);
            d.push_str(if i == 0 { "M " } else { "L " });
            d.push_str(&format!("{} {} ", fmt(x), fmt(y)));
        }
        if close {
            d.push_str("Z ");
        }
    };
    match g {
        Geometry::Point(p) => push_circle(*p, &mut d),
        Geometry::MultiPoint(ps) => ps.iter().for_each(|p| push_circle(*p, &mut d)),
        Geometry::LineString(ps) => push_path(ps, false, &mut d),
        Geometry::MultiLineString(ls) => ls.iter().for_each(|ps| push_path(ps, false, &mut d)),
        Geometry::Polygon(rings) => rings
            .iter()
            .for_each(|ring| push_path(&ring[..ring.len() - 1], true, &mut d)),
        Geometry::MultiPolygon(polys) => polys.iter().flatten().for_each(|ring| {
            push_path(&ring[..ring.len() - 1], true, &mut d);
        }),
    }
    d.trim_end().to_string()
}

fn quantile_breaks(fc: &FeatureCollection, field: &str, classes: usize) -> Vec<f64> {
    let mut values: Vec<f64> = fc
        .features
        .iter()
        .filter_map(|f| f.properties.get(field).and_then(|v| v.as_number()))
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if values.is_empty() {
        return vec![0.0, 0.0];
    }
    let k = classes.max(1);
    let mut breaks: Vec<f64> = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let idx = ((i as f64 / k as f64) * (values.len() - 1) as f64).round() as usize;
        breaks.push(values[idx]);
    }
    breaks.dedup();
    if breaks.len() < 2 {
        breaks.push(breaks[0]);
    }
    breaks
}

fn class_of(v: f64, breaks: &[f64]) -> usize {
    let n = breaks.len() - 1;
    for i in 0..n {
        if v <= breaks[i + 1] {
            return i;
        }
    }
    n - 1
}

fn ramp_color(class: usize, classes: usize) -> &'static str {
    if classes <= 1 {
        return COLOR_RAMP[4];
    }
    let idx = class * (COLOR_RAMP.len() - 1) / (classes - 1).max(1);
    COLOR_RAMP[idx.min(COLOR_RAMP.len() - 1)]
}

/// Chart flavors for [`render_chart_svg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartKind {
    Bar,
    Scatter,
}

/// Render a bar or scatter chart. Bars keep input order; axis ticks sit at
/// "nice" steps (1/2/5 times a power of ten).
pub fn render_chart_svg(
    data: &TabularData,
    kind: ChartKind,
    x: &str,
    y: &str,
    out_path: &Path,
) -> Result<WrittenFileReport> {
    if !data.columns.iter().any(|c| c == y) {
        return Err(OpError::MissingField(y.to_string()));
    }
    if !data.columns.iter().any(|c| c == x) {
        return Err(OpError::MissingField(x.to_string()));
    }
    let ys: Vec<f64> = data
        .rows
        .iter()
        .map(|row| {
            row.get(y)
                .and_then(|v| v.as_number())
                .ok_or_else(|| OpError::NonNumericColumn(y.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (w, h, ml, mb) = (640.0, 400.0, 60.0, 40.0);
    let plot_w = w - ml - 20.0;
    let plot_h = h - mb - 20.0;
    let y_max = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max).max(0.0);
    let y_min = ys.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
    let y_span = (y_max - y_min).max(1e-12);
    let y_px = |v: f64| 20.0 + plot_h - (v - y_min) / y_span * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    // axes
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"20\" x2=\"{ml}\" y2=\"{}\" stroke=\"#000\"/>\n",
        20.0 + plot_h
    ));
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"#000\"/>\n",
        y_px(0.0).min(20.0 + plot_h),
        ml + plot_w
    ));
    for tick in nice_ticks(y_min, y_max) {
        let ty = y_px(tick);
        svg.push_str(&format!(
            "<line class=\"tick\" x1=\"{}\" y1=\"{}\" x2=\"{ml}\" y2=\"{}\" stroke=\"#000\"/>\n",
            ml - 4.0,
            fmt(ty),
            fmt(ty)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>\n",
            ml - 6.0,
            fmt(ty + 3.0),
            fmt(tick)
        ));
    }
    match kind {
        ChartKind::Bar => {
            let n = data.rows.len().max(1);
            let slot = plot_w / n as f64;
            let bar_w = slot * 0.8;
            for (i, (row, v)) in data.rows.iter().zip(&ys).enumerate() {
                let x0 = ml + slot * i as f64 + slot * 0.1;
                let top = y_px(v.max(0.0));
                let bottom = y_px(v.min(0.0));
                svg.push_str(&format!(
                    "<rect class=\"bar\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#4292c6\"/>\n",
                    fmt(x0),
                    fmt(top),
                    fmt(bar_w),
                    fmt((bottom - top).abs())
                ));
                let label = row.get(x).map(crate::io::format_attr).unwrap_or_default();
                svg.push_str(&format!(
                    "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n",
                    fmt(x0 + bar_w / 2.0),
                    20.0 + plot_h + 14.0,
                    xml_escape(&label)
                ));
            }
        }
        ChartKind::Scatter => {
            let xs: Vec<f64> = data
                .rows
                .iter()
                .map(|row| {
                    row.get(x)
                        .and_then(|v| v.as_number())
                        .ok_or_else(|| OpError::NonNumericColumn(x.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            let x_max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let x_min = xs.iter().copied().fold(f64::INFINITY, f64::min);
            let x_span = (x_max - x_min).max(1e-12);
            for (px, py) in xs.iter().zip(&ys) {
                let cx = ml + (px - x_min) / x_span * plot_w;
                svg.push_str(&format!(
                    "<circle class=\"marker\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#2171b5\"/>\n",
                    fmt(cx),
                    fmt(y_px(*py))
                ));
            }
        }
    }
    svg.push_str("</svg>\n");
    std::fs::write(out_path, svg).map_err(|e| OpError::io(out_path.display().to_string(), e))?;
    Ok(WrittenFileReport {
        paths: vec![out_path.display().to_string()],
        feature_count: data.rows.len(),
        truncated_fields: Vec::new(),
    })
}

/// Tick positions at 1/2/5 × 10^k steps covering [min, max].
fn nice_ticks(min: f64, max: f64) -> Vec<f64> {
    let span = (max - min).max(1e-12);
    let raw_step = span / 6.0;
    let mag = 10f64.powf(raw_step.log10().floor());
    let norm = raw_step / mag;
    // nearest of 1/2/5/10, not the ceiling, so ticks stay reasonably dense
    let step = if norm < 1.5 {
        mag
    } else if norm < 3.0 {
        2.0 * mag
    } else if norm < 7.0 {
        5.0 * mag
    } else {
        10.0 * mag
    };
    let start = (min / step).ceil() as i64;
    let end = (max / step).floor() as i64;
    (start..=end).map(|i| i as f64 * step).collect()
}

fn fmt(v: f64) -> String {
    // shortest round-trip form, stable across runs
    let rounded = (v * 1e6).round() / 1e6;
    format!("{rounded}")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
