//! Sandboxed dispatch: validated calls run against the operation library
//! with every path resolved inside the task workspace.

use std::path::Path;
use std::sync::Arc;

use geoagent_model::{collection_metadata, AttributeValue, CrsRef, FeatureCollection};
use geoagent_ops::io::{self, FetchOptions, HttpTransport};
use geoagent_ops::join::AggFn;
use geoagent_ops::render::{ChartKind, LayerStyle};
use geoagent_ops::{
    buffer, fields, join, measure, overlay, reshape, BoundingKind, CentroidMode, JoinPredicate,
    OpError, OverlayMode, SortOrder, TabularData, WrittenFileReport,
};
use serde_json::{json, Value};

use crate::{FunctionCall, Registry, Workspace};

/// Execution environment handed to dispatch: the workspace sandbox and the
/// injected transport for data retrieval.
#[derive(Clone)]
pub struct DispatchEnv {
    pub workspace: Workspace,
    pub transport: Arc<dyn HttpTransport>,
    pub fetch: FetchOptions,
}

impl DispatchEnv {
    pub fn new(workspace: Workspace, transport: Arc<dyn HttpTransport>) -> Self {
        DispatchEnv {
            workspace,
            transport,
            fetch: FetchOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CallStatus {
    Ok,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputKind {
    File,
    Table,
    Scalar,
    Message,
}

impl OutputKind {
    pub fn name(&self) -> &'static str {
        match self {
            OutputKind::File => "file",
            OutputKind::Table => "table",
            OutputKind::Scalar => "scalar",
            OutputKind::Message => "message",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub kind: OutputKind,
    /// File outputs carry the workspace-relative path; tables carry JSON.
    pub payload: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CallError {
    pub code: String,
    pub message: String,
}

/// Outcome of one dispatched call.
#[derive(Debug, Clone, PartialEq)]
pub struct CallResult {
    pub status: CallStatus,
    pub outputs: Vec<Output>,
    pub error: Option<CallError>,
}

impl CallResult {
    pub fn ok(outputs: Vec<Output>) -> Self {
        CallResult {
            status: CallStatus::Ok,
            outputs,
            error: None,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == CallStatus::Ok
    }

    pub fn to_value(&self) -> Value {
        json!({
            "status": match self.status { CallStatus::Ok => "ok", CallStatus::Error => "error" },
            "outputs": self.outputs.iter().map(|o| json!({
                "kind": o.kind.name(),
                "payload": o.payload,
            })).collect::<Vec<_>>(),
            "error": self.error.as_ref().map(|e| json!({
                "code": e.code,
                "message": e.message,
            })),
        })
    }
}

impl From<OpError> for CallError {
    fn from(e: OpError) -> Self {
        CallError {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

/// Dispatch a validated call. Returns `CallResult::Error` (never panics)
/// for every operation-level failure.
pub fn dispatch(registry: &Registry, call: &FunctionCall, env: &DispatchEnv) -> CallResult {
    if registry.get(&call.name).is_none() {
        return error_result(OpError::InvalidArgument(format!(
            "unknown function {:?}",
            call.name
        )));
    }
    match run(call, env) {
        Ok(result) => result,
        Err(e) => error_result(e),
    }
}

fn error_result(e: OpError) -> CallResult {
    CallResult {
        status: CallStatus::Error,
        outputs: Vec::new(),
        error: Some(e.into()),
    }
}

struct Args<'a> {
    call: &'a FunctionCall,
    env: &'a DispatchEnv,
}

impl<'a> Args<'a> {
    fn str(&self, name: &str) -> Result<&str, OpError> {
        self.call
            .arguments
            .get(name)
            .and_then(|v| v.as_str())
            .ok_or_else(|| OpError::InvalidArgument(format!("missing argument {name}")))
    }

    fn opt_str(&self, name: &str) -> Option<&str> {
        self.call.arguments.get(name).and_then(|v| v.as_str())
    }

    fn number(&self, name: &str) -> Result<f64, OpError> {
        self.call
            .arguments
            .get(name)
            .and_then(|v| v.as_f64())
            .ok_or_else(|| OpError::InvalidArgument(format!("missing argument {name}")))
    }

    fn boolean(&self, name: &str) -> bool {
        self.call
            .arguments
            .get(name)
            .and_then(|v| v.as_bool())
            .unwrap_or(false)
    }

    fn number_list(&self, name: &str) -> Result<Vec<f64>, OpError> {
        self.call
            .arguments
            .get(name)
            .and_then(|v| v.as_array())
            .map(|a| a.iter().filter_map(|v| v.as_f64()).collect())
            .ok_or_else(|| OpError::InvalidArgument(format!("missing argument {name}")))
    }

    fn string_list(&self, name: &str) -> Result<Vec<String>, OpError> {
        self.call
            .arguments
            .get(name)
            .and_then(|v| v.as_array())
            .map(|a| {
                a.iter()
                    .filter_map(|v| v.as_str().map(|s| s.to_string()))
                    .collect()
            })
            .ok_or_else(|| OpError::InvalidArgument(format!("missing argument {name}")))
    }

    fn in_collection(&self, name: &str) -> Result<FeatureCollection, OpError> {
        let path = self.env.workspace.resolve(self.str(name)?)?;
        io::read_collection(&path)
    }

    fn out_path(&self, name: &str) -> Result<std::path::PathBuf, OpError> {
        self.env.workspace.resolve(self.str(name)?)
    }

    fn save(&self, fc: &FeatureCollection, name: &str) -> Result<CallResult, OpError> {
        let report = io::save_result(fc, &self.out_path(name)?)?;
        Ok(report_result(self.env.workspace.root(), &report))
    }

    fn save_table(&self, table: &TabularData, name: &str) -> Result<CallResult, OpError> {
        let report = io::save_table_csv(table, &self.out_path(name)?)?;
        Ok(report_result(self.env.workspace.root(), &report))
    }
}

fn report_result(root: &Path, report: &WrittenFileReport) -> CallResult {
    let mut outputs: Vec<Output> = report
        .paths
        .iter()
        .map(|p| Output {
            kind: OutputKind::File,
            payload: relativize(root, p),
        })
        .collect();
    outputs.push(Output {
        kind: OutputKind::Scalar,
        payload: report.feature_count.to_string(),
    });
    for (orig, stored) in &report.truncated_fields {
        outputs.push(Output {
            kind: OutputKind::Message,
            payload: format!("field {orig:?} stored as {stored:?} (10-byte limit)"),
        });
    }
    CallResult::ok(outputs)
}

fn relativize(root: &Path, path: &str) -> String {
    Path::new(path)
        .strip_prefix(root)
        .map(|p| p.display().to_string())
        .unwrap_or_else(|_| path.to_string())
}

fn run(call: &FunctionCall, env: &DispatchEnv) -> Result<CallResult, OpError> {
    let a = Args { call, env };
    match call.name.as_str() {
        "DownloadGeoJSONData" => {
            let fc = io::fetch_remote_collection(a.str("url")?, env.transport.as_ref(), &env.fetch)?;
            a.save(&fc, "output")
        }
        "ReadingDataFromGeoJSON" => {
            let rel = a.str("input")?;
            let fc = a.in_collection("input")?;
            let meta = collection_metadata(&fc, rel);
            let summary = json!({
                "path": meta.path,
                "feature_count": meta.feature_count,
                "geometry_kinds": meta.geometry_kinds.iter().map(|k| k.name()).collect::<Vec<_>>(),
                "schema": meta.property_schema.iter()
                    .map(|(k, t)| (k.clone(), t.name()))
                    .collect::<std::collections::BTreeMap<_, _>>(),
                "crs": meta.crs.to_string(),
                "bbox": meta.bbox.map(|b| vec![b.minx, b.miny, b.maxx, b.maxy]),
            });
            Ok(CallResult::ok(vec![Output {
                kind: OutputKind::Table,
                payload: summary.to_string(),
            }]))
        }
        "AddFieldToGeoDataFrame" => {
            let fc = a.in_collection("input")?;
            let expr = geoagent_expr::parse_expression(a.str("expression")?)?;
            let out = fields::add_field(
                &fc,
                a.str("name")?,
                &fields::FieldValue::Expression(expr),
                a.boolean("overwrite"),
            )?;
            a.save(&out, "output")
        }
        "RenameColumnOfGeoDataFrame" => {
            let fc = a.in_collection("input")?;
            let old = a.string_list("old_names")?;
            let new = a.string_list("new_names")?;
            if old.len() != new.len() {
                return Err(OpError::InvalidArgument(
                    "old_names and new_names must have the same length".into(),
                ));
            }
            let mapping: indexmap::IndexMap<String, String> =
                old.into_iter().zip(new).collect();
            let out = fields::rename_fields(&fc, &mapping)?;
            a.save(&out, "output")
        }
        "SaveAsFinalResult" | "ConvertFileFormat" => {
            let input = env.workspace.resolve(a.str("input")?)?;
            let output = a.out_path("output")?;
            let report = io::convert_format(&input, &output)?;
            Ok(report_result(env.workspace.root(), &report))
        }
        "TransformProjectionOfGeoDataFrame" => {
            let fc = a.in_collection("input")?;
            let target = match a.str("target_crs")? {
                "none" => CrsRef::None,
                name => CrsRef::parse_name(name)?,
            };
            let out = overlay::reproject(&fc, target)?;
            a.save(&out, "output")
        }
        "VisualizeGeoJSONData" => {
            let fc = a.in_collection("input")?;
            let style = LayerStyle {
                choropleth_field: a.opt_str("field").map(|s| s.to_string()),
                choropleth_classes: a
                    .call
                    .arguments
                    .get("classes")
                    .and_then(|v| v.as_u64())
                    .unwrap_or(5) as usize,
                ..LayerStyle::default()
            };
            let report = geoagent_ops::render::render_map_svg(&[(&fc, style)], &a.out_path("output")?)?;
            Ok(report_result(env.workspace.root(), &report))
        }
        "InteractiveEdit" => Err(OpError::NotImplemented(
            "InteractiveEdit: interactive HTML output is not available in this build".into(),
        )),
        "InteractiveQuery" => Err(OpError::NotImplemented(
            "InteractiveQuery: interactive HTML output is not available in this build".into(),
        )),
        "GroupByOneGeoDataFrames" => {
            let fc = a.in_collection("input")?;
            let fields_list = a.string_list("agg_fields")?;
            let funcs = a.string_list("agg_funcs")?;
            if fields_list.len() != funcs.len() {
                return Err(OpError::InvalidArgument(
                    "agg_fields and agg_funcs must have the same length".into(),
                ));
            }
            let aggs: Vec<(String, AggFn)> = fields_list
                .into_iter()
                .zip(funcs)
                .map(|(field, func)| Ok((field, AggFn::parse(&func)?)))
                .collect::<Result<_, OpError>>()?;
            let table = join::group_aggregate(&fc, a.str("by")?, &aggs)?;
            a.save_table(&table, "output")
        }
        "MergeDataFrameToGeoDataFrame" => {
            let fc = a.in_collection("input")?;
            let table = io::read_table_csv(&env.workspace.resolve(a.str("table")?)?)?;
            let (out, duplicates) =
                join::attribute_join(&fc, &table, a.str("key_geo")?, a.str("key_table")?)?;
            let mut result = a.save(&out, "output")?;
            if duplicates > 0 {
                result.outputs.push(Output {
                    kind: OutputKind::Message,
                    payload: format!("{duplicates} duplicate table keys ignored (first wins)"),
                });
            }
            Ok(result)
        }
        "CalculateGeometryLength" => {
            let fc = a.in_collection("input")?;
            let (out, warned) = measure::geometry_length(&fc)?;
            let mut result = a.save(&out, "output")?;
            if warned {
                result.outputs.push(Output {
                    kind: OutputKind::Message,
                    payload: "lengths are in degrees; reproject for meters".into(),
                });
            }
            Ok(result)
        }
        "ClipGeoDataFrame" => {
            let target = a.in_collection("input")?;
            let mask = a.in_collection("mask")?;
            let out = overlay::clip(&target, &mask)?;
            a.save(&out, "output")
        }
        "FeatureToLine" => {
            let out = reshape::features_to_lines(&a.in_collection("input")?)?;
            a.save(&out, "output")
        }
        "FeatureVerticesToPoints" => {
            let out = reshape::vertices_to_points(&a.in_collection("input")?)?;
            a.save(&out, "output")
        }
        "FeatureToPolygon" => {
            let out = reshape::lines_to_polygons(&a.in_collection("input")?)?;
            a.save(&out, "output")
        }
        "OverlayAnalysis" => {
            let fa = a.in_collection("input_a")?;
            let fb = a.in_collection("input_b")?;
            let mode = OverlayMode::parse(a.str("mode")?)?;
            let out = overlay::overlay(&fa, &fb, mode)?;
            a.save(&out, "output")
        }
        "CreateMultiRingBufferFromGeoDataFrame" => {
            let fc = a.in_collection("input")?;
            let distances = a.number_list("distances")?;
            let out = buffer::buffer(&fc, &distances, a.boolean("allow_geographic"))?;
            a.save(&out, "output")
        }
        "SpatialAnalysisOfAggregationPoints" => {
            let out = join::cluster_points(&a.in_collection("input")?, a.number("threshold")?)?;
            a.save(&out, "output")
        }
        "CreateThiessenPolygon" => {
            let out = reshape::voronoi(&a.in_collection("input")?)?;
            a.save(&out, "output")
        }
        "CreateMinPointgroupBorder" => {
            let kind = match a.opt_str("kind").unwrap_or("rectangle") {
                "rectangle" => BoundingKind::RotatedRectangle,
                "convex_hull" => BoundingKind::ConvexHull,
                other => {
                    return Err(OpError::InvalidArgument(format!(
                        "unknown bounding kind {other:?}"
                    )))
                }
            };
            let out = reshape::min_bounding_geometry(&a.in_collection("input")?, kind)?;
            a.save(&out, "output")
        }
        "CalculateMainDirectionOfPolygon" => {
            let out = reshape::main_direction(&a.in_collection("input")?)?;
            a.save(&out, "output")
        }
        "SortPointsbyField" => {
            let order = match a.opt_str("order").unwrap_or("asc") {
                "asc" => SortOrder::Asc,
                "desc" => SortOrder::Desc,
                other => {
                    return Err(OpError::InvalidArgument(format!(
                        "unknown sort order {other:?}"
                    )))
                }
            };
            let out = fields::sort_by_field(&a.in_collection("input")?, a.str("field")?, order)?;
            a.save(&out, "output")
        }
        "CreateLineConnectingNearestPoints" => {
            let out = join::connect_nearest_pair(&a.in_collection("input")?)?;
            a.save(&out, "output")
        }
        "CalculateDistanceBetweenPoints" => {
            let table = measure::pairwise_distances(&a.in_collection("input")?)?;
            a.save_table(&table, "output")
        }
        "SummarizeNearestDistances" => {
            let table = join::summarize_nearest(
                &a.in_collection("input")?,
                a.str("dist_field")?,
                a.opt_str("group_field"),
            )?;
            a.save_table(&table, "output")
        }
        "JoinNearestPoints" => {
            let out = join::nearest_join(&a.in_collection("source")?, &a.in_collection("target")?)?;
            a.save(&out, "output")
        }
        "CalculateGeometricCenter" => {
            let mode = match a.opt_str("mode").unwrap_or("centroid") {
                "centroid" => CentroidMode::Centroid,
                "representative_point" => CentroidMode::RepresentativePoint,
                other => {
                    return Err(OpError::InvalidArgument(format!(
                        "unknown centroid mode {other:?}"
                    )))
                }
            };
            let out = measure::centroid_points(&a.in_collection("input")?, mode)?;
            a.save(&out, "output")
        }
        "CountTheQuantityOfSpatialFeatures" => {
            let out = join::count_in_regions(
                &a.in_collection("points")?,
                &a.in_collection("regions")?,
                a.str("out_field")?,
            )?;
            a.save(&out, "output")
        }
        "nearest_point_on_line" => {
            let out =
                join::nearest_point_on_line(&a.in_collection("points")?, &a.in_collection("lines")?)?;
            a.save(&out, "output")
        }
        "XYCoordinatesToLine" => {
            let out = join::coord_pairs_to_lines(&a.in_collection("input")?)?;
            a.save(&out, "output")
        }
        "SplitPolygonByLine" => {
            let out = reshape::split_polygon_by_line(
                &a.in_collection("polygons")?,
                &a.in_collection("lines")?,
            )?;
            a.save(&out, "output")
        }
        "CalculatePerpendicularDistanceFromPointToLine" => {
            let table = measure::point_line_distance(
                &a.in_collection("points")?,
                &a.in_collection("lines")?,
            )?;
            a.save_table(&table, "output")
        }
        "AddXYCoordinates" => {
            let out = fields::add_xy_fields(&a.in_collection("input")?)?;
            a.save(&out, "output")
        }
        "SelectRowsFromGeoDataFrame" => {
            let fc = a.in_collection("input")?;
            let selector = if call.arguments.contains_key("indices") {
                fields::RowSelector::Indices(
                    a.number_list("indices")?.iter().map(|n| *n as usize).collect(),
                )
            } else if call.arguments.contains_key("ids") {
                fields::RowSelector::Ids(
                    a.string_list("ids")?
                        .into_iter()
                        .map(AttributeValue::String)
                        .collect(),
                )
            } else {
                return Err(OpError::InvalidArgument(
                    "pass either indices or ids".into(),
                ));
            };
            let out = fields::select_rows(&fc, &selector)?;
            a.save(&out, "output")
        }
        "FilterRowsByExpression" => {
            let fc = a.in_collection("input")?;
            let expr = geoagent_expr::parse_expression(a.str("expression")?)?;
            let out = fields::filter_rows(&fc, &expr)?;
            a.save(&out, "output")
        }
        "SpatialJoinTwoGeoDataFrames" => {
            let predicate = JoinPredicate::parse(a.opt_str("predicate").unwrap_or("intersects"))?;
            let out = join::spatial_join(
                &a.in_collection("left")?,
                &a.in_collection("right")?,
                predicate,
            )?;
            a.save(&out, "output")
        }
        "ExportCoordinateofGeometry" => {
            let fc = a.in_collection("input")?;
            let report = io::export_coordinates(&fc, &a.out_path("output")?)?;
            Ok(report_result(env.workspace.root(), &report))
        }
        "PlotGeoDataFrameByMatplotlib" => {
            let fc = a.in_collection("input")?;
            match a.opt_str("kind").unwrap_or("map") {
                "map" => {
                    let style = LayerStyle {
                        choropleth_field: a.opt_str("field").map(|s| s.to_string()),
                        choropleth_classes: call
                            .arguments
                            .get("classes")
                            .and_then(|v| v.as_u64())
                            .unwrap_or(5) as usize,
                        ..LayerStyle::default()
                    };
                    let report = geoagent_ops::render::render_map_svg(
                        &[(&fc, style)],
                        &a.out_path("output")?,
                    )?;
                    Ok(report_result(env.workspace.root(), &report))
                }
                chart @ ("bar" | "scatter") => {
                    let kind = if chart == "bar" {
                        ChartKind::Bar
                    } else {
                        ChartKind::Scatter
                    };
                    let x = a.str("x")?;
                    let y = a.str("y")?;
                    let table = attributes_table(&fc);
                    let report = geoagent_ops::render::render_chart_svg(
                        &table,
                        kind,
                        x,
                        y,
                        &a.out_path("output")?,
                    )?;
                    Ok(report_result(env.workspace.root(), &report))
                }
                other => Err(OpError::InvalidArgument(format!(
                    "unknown plot kind {other:?}"
                ))),
            }
        }
        other => Err(OpError::InvalidArgument(format!(
            "unknown function {other:?}"
        ))),
    }
}

/// Attribute table view of a collection (geometry dropped).
fn attributes_table(fc: &FeatureCollection) -> TabularData {
    let mut columns: Vec<String> = Vec::new();
    for f in &fc.features {
        for (name, _) in f.properties.iter() {
            if !columns.contains(name) {
                columns.push(name.clone());
            }
        }
    }
    let mut table = TabularData::new(columns.clone());
    for f in &fc.features {
        let row = columns
            .iter()
            .map(|c| {
                f.properties
                    .get(c)
                    .cloned()
                    .unwrap_or(AttributeValue::Null)
            })
            .collect();
        table.push_row(row);
    }
    table
}
