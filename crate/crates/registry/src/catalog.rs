//! The built-in 40-function catalog.

use crate::spec::{FunctionSpec, ParamSpec, ParamType, ReturnSpec};
use crate::Registry;

use ParamType as T;

fn req(name: &str, t: ParamType, desc: &str) -> ParamSpec {
    ParamSpec {
        name: name.into(),
        param_type: t,
        required: true,
        description: desc.into(),
    }
}

fn opt(name: &str, t: ParamType, desc: &str) -> ParamSpec {
    ParamSpec {
        name: name.into(),
        param_type: t,
        required: false,
        description: desc.into(),
    }
}

fn f(
    name: &str,
    desc: &str,
    params: Vec<ParamSpec>,
    ret: (&str, &str),
    example: &str,
) -> FunctionSpec {
    FunctionSpec {
        name: name.into(),
        description: desc.into(),
        params,
        returns: ReturnSpec {
            return_type: ret.0.into(),
            description: ret.1.into(),
        },
        example: example.into(),
    }
}

/// Build the registry with all 40 functions. The two interactive entries
/// are present for catalog fidelity but dispatch to a not-implemented
/// error.
pub fn builtin_registry() -> Registry {
    let functions = vec![
        f(
            "DownloadGeoJSONData",
            "Retrieve GeoJSON spatial data from an online source and save it into the workspace.",
            vec![
                req("url", T::String, "http(s) URL of the GeoJSON document"),
                req("output", T::Path, "where to save the downloaded file"),
            ],
            ("collection_file", "the downloaded GeoJSON file"),
            r#"{"name":"DownloadGeoJSONData","arguments":{"url":"http://example.com/data.geojson","output":"data.geojson"}}"#,
        ),
        f(
            "ReadingDataFromGeoJSON",
            "Read a GeoJSON file and report its structure: feature count, geometry kinds, attribute schema, CRS and bounding box.",
            vec![req("input", T::Path, "GeoJSON file to inspect")],
            ("metadata", "summary of the file contents"),
            r#"{"name":"ReadingDataFromGeoJSON","arguments":{"input":"data.geojson"}}"#,
        ),
        f(
            "AddFieldToGeoDataFrame",
            "Add a new field to every feature, computed from an expression over the existing attributes (a bare literal adds a constant).",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("name", T::String, "name of the new field"),
                req("expression", T::Expression, "value expression, e.g. population / (ALAND / 1000000)"),
                req("output", T::Path, "where to save the result"),
                opt("overwrite", T::Boolean, "allow replacing an existing field"),
            ],
            ("collection_file", "the collection with the field added"),
            r#"{"name":"AddFieldToGeoDataFrame","arguments":{"input":"counties.geojson","name":"population_density","expression":"population / (ALAND / 1000000)","output":"out.geojson"}}"#,
        ),
        f(
            "RenameColumnOfGeoDataFrame",
            "Rename columns. Old and new names are parallel lists and the rename is applied atomically.",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("old_names", T::StringList, "existing column names"),
                req("new_names", T::StringList, "replacement names, same length"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "the collection with columns renamed"),
            r#"{"name":"RenameColumnOfGeoDataFrame","arguments":{"input":"points.geojson","old_names":["p"],"new_names":["precip"],"output":"out.geojson"}}"#,
        ),
        f(
            "SaveAsFinalResult",
            "Save a collection as the final output. Format follows the extension: .geojson/.json, .shp (with .shx/.dbf) or .csv (WKT geometry column).",
            vec![
                req("input", T::Path, "collection to save"),
                req("output", T::Path, "target file; extension selects the format"),
            ],
            ("collection_file", "the written file (triplet for shapefiles)"),
            r#"{"name":"SaveAsFinalResult","arguments":{"input":"result.geojson","output":"final.shp"}}"#,
        ),
        f(
            "TransformProjectionOfGeoDataFrame",
            "Transform the coordinate reference system (EPSG:4326, EPSG:3857 or UTM 326zz/327zz), or clear it with target 'none'.",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("target_crs", T::Crs, "target CRS name, e.g. EPSG:3857, or none"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "the reprojected collection"),
            r#"{"name":"TransformProjectionOfGeoDataFrame","arguments":{"input":"country.geojson","target_crs":"EPSG:3857","output":"out.geojson"}}"#,
        ),
        f(
            "ConvertFileFormat",
            "Convert a GeoJSON file to shapefile or CSV (or re-emit normalized GeoJSON).",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("output", T::Path, "target file; extension selects the format"),
            ],
            ("collection_file", "the converted file"),
            r#"{"name":"ConvertFileFormat","arguments":{"input":"roads.geojson","output":"roads.shp"}}"#,
        ),
        f(
            "VisualizeGeoJSONData",
            "Render a GeoJSON file to a deterministic SVG map; an optional numeric field turns the fill into a quantile choropleth with a legend.",
            vec![
                req("input", T::Path, "GeoJSON file to draw"),
                req("output", T::Path, "SVG file to write"),
                opt("field", T::Field, "numeric field for choropleth classes"),
                opt("classes", T::Integer, "number of quantile classes (default 5)"),
            ],
            ("image_file", "the rendered SVG"),
            r#"{"name":"VisualizeGeoJSONData","arguments":{"input":"counties.geojson","output":"map.svg","field":"population_density"}}"#,
        ),
        f(
            "InteractiveEdit",
            "Produce an interactive attribute-editing page for a GeoJSON file.",
            vec![
                req("input", T::Path, "GeoJSON file to edit"),
                req("output", T::Path, "HTML file to write"),
            ],
            ("message", "not available in this build"),
            r#"{"name":"InteractiveEdit","arguments":{"input":"buildings.geojson","output":"edit.html"}}"#,
        ),
        f(
            "GroupByOneGeoDataFrames",
            "Group features by a column and apply aggregation functions (sum, mean, min, max, count) to other columns; writes a CSV table.",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("by", T::Field, "grouping column"),
                req("agg_fields", T::StringList, "columns to aggregate"),
                req("agg_funcs", T::StringList, "matching functions per column"),
                req("output", T::Path, "CSV file to write"),
            ],
            ("table_file", "one row per group"),
            r#"{"name":"GroupByOneGeoDataFrames","arguments":{"input":"rain.geojson","by":"index","agg_fields":["p"],"agg_funcs":["sum"],"output":"totals.csv"}}"#,
        ),
        f(
            "MergeDataFrameToGeoDataFrame",
            "Left-join a CSV table onto a collection by key equality; the first table match wins.",
            vec![
                req("input", T::Path, "target GeoJSON file"),
                req("table", T::Path, "CSV table to merge"),
                req("key_geo", T::Field, "key column on the collection"),
                req("key_table", T::String, "key column in the table"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "the joined collection"),
            r#"{"name":"MergeDataFrameToGeoDataFrame","arguments":{"input":"zones.geojson","table":"stats.csv","key_geo":"zone_id","key_table":"id","output":"joined.geojson"}}"#,
        ),
        f(
            "CalculateGeometryLength",
            "Add a numeric 'length' field (perimeter for polygons) in CRS units.",
            vec![
                req("input", T::Path, "line or polygon GeoJSON file"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "the collection with lengths added"),
            r#"{"name":"CalculateGeometryLength","arguments":{"input":"roads.geojson","output":"out.geojson"}}"#,
        ),
        f(
            "ClipGeoDataFrame",
            "Clip features to the polygons of a mask layer; attributes are preserved and empty results dropped.",
            vec![
                req("input", T::Path, "layer to clip"),
                req("mask", T::Path, "polygonal mask layer"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "the clipped collection"),
            r#"{"name":"ClipGeoDataFrame","arguments":{"input":"road.geojson","mask":"area.geojson","output":"clipped.geojson"}}"#,
        ),
        f(
            "FeatureToLine",
            "Convert features to lines: polygon rings become boundary LineStrings with a ring_index field.",
            vec![
                req("input", T::Path, "line or polygon GeoJSON file"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "line features"),
            r#"{"name":"FeatureToLine","arguments":{"input":"zone.geojson","output":"lines.geojson"}}"#,
        ),
        f(
            "FeatureVerticesToPoints",
            "Convert feature vertices to points (ring closures emitted once), adding a vertex_index field.",
            vec![
                req("input", T::Path, "line or polygon GeoJSON file"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "point features"),
            r#"{"name":"FeatureVerticesToPoints","arguments":{"input":"zone_lines.geojson","output":"vertices.geojson"}}"#,
        ),
        f(
            "FeatureToPolygon",
            "Convert line features to polygons by noding the lines and polygonizing every enclosed face.",
            vec![
                req("input", T::Path, "line GeoJSON file"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "polygon features"),
            r#"{"name":"FeatureToPolygon","arguments":{"input":"zone_lines.geojson","output":"polygons.geojson"}}"#,
        ),
        f(
            "OverlayAnalysis",
            "Boolean overlay of two polygonal layers: intersection, union, difference or symmetric_difference.",
            vec![
                req("input_a", T::Path, "first polygonal layer"),
                req("input_b", T::Path, "second polygonal layer"),
                req("mode", T::String, "intersection | union | difference | symmetric_difference"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "the overlay result"),
            r#"{"name":"OverlayAnalysis","arguments":{"input_a":"buf_a.geojson","input_b":"buf_b.geojson","mode":"intersection","output":"overlap.geojson"}}"#,
        ),
        f(
            "CreateMultiRingBufferFromGeoDataFrame",
            "Create buffers at one or more ascending distances; outer rings are annuli and every output row carries its distance.",
            vec![
                req("input", T::Path, "source GeoJSON file (metric CRS)"),
                req("distances", T::NumberList, "strictly ascending positive distances"),
                req("output", T::Path, "where to save the result"),
                opt("allow_geographic", T::Boolean, "permit buffering in degree units"),
            ],
            ("collection_file", "buffer polygons"),
            r#"{"name":"CreateMultiRingBufferFromGeoDataFrame","arguments":{"input":"shops.geojson","distances":[500],"output":"buffers.geojson"}}"#,
        ),
        f(
            "SpatialAnalysisOfAggregationPoints",
            "Single-linkage clustering of points: rows chained by hops within the threshold share a cluster_id.",
            vec![
                req("input", T::Path, "point GeoJSON file"),
                req("threshold", T::Number, "maximum hop distance, CRS units"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "points labeled with cluster_id"),
            r#"{"name":"SpatialAnalysisOfAggregationPoints","arguments":{"input":"points.geojson","threshold":100,"output":"clusters.geojson"}}"#,
        ),
        f(
            "CreateThiessenPolygon",
            "Generate Thiessen (Voronoi) polygons for point features, clipped to the expanded input extent; each cell keeps its seed's attributes.",
            vec![
                req("input", T::Path, "point GeoJSON file"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "one cell polygon per input point"),
            r#"{"name":"CreateThiessenPolygon","arguments":{"input":"points.geojson","output":"cells.geojson"}}"#,
        ),
        f(
            "CreateMinPointgroupBorder",
            "Compute the minimum bounding geometry of a point set: minimum-area rotated rectangle (default) or convex hull.",
            vec![
                req("input", T::Path, "point GeoJSON file"),
                req("output", T::Path, "where to save the result"),
                opt("kind", T::String, "rectangle | convex_hull (default rectangle)"),
            ],
            ("collection_file", "the bounding geometry"),
            r#"{"name":"CreateMinPointgroupBorder","arguments":{"input":"points.geojson","output":"border.geojson"}}"#,
        ),
        f(
            "CalculateMainDirectionOfPolygon",
            "Add a Direction field: the angle of the longer side of each polygon's minimum rotated rectangle, degrees CCW from +x in [0, 180).",
            vec![
                req("input", T::Path, "polygon GeoJSON file"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "polygons with a Direction field"),
            r#"{"name":"CalculateMainDirectionOfPolygon","arguments":{"input":"rectangles.geojson","output":"directions.geojson"}}"#,
        ),
        f(
            "SortPointsbyField",
            "Stable sort of features by one attribute field.",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("field", T::Field, "sort key column"),
                req("output", T::Path, "where to save the result"),
                opt("order", T::String, "asc | desc (default asc)"),
            ],
            ("collection_file", "the sorted collection"),
            r#"{"name":"SortPointsbyField","arguments":{"input":"Point.geojson","field":"NEAR_DIST","output":"sorted.geojson"}}"#,
        ),
        f(
            "CreateLineConnectingNearestPoints",
            "Join the single globally closest pair of points with a two-point line carrying from_id, to_id and distance.",
            vec![
                req("input", T::Path, "point GeoJSON file"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "one line feature"),
            r#"{"name":"CreateLineConnectingNearestPoints","arguments":{"input":"Point.geojson","output":"pair.geojson"}}"#,
        ),
        f(
            "CalculateDistanceBetweenPoints",
            "Compute all pairwise point distances as CSV rows (i, j, distance) for i < j.",
            vec![
                req("input", T::Path, "point GeoJSON file"),
                req("output", T::Path, "CSV file to write"),
            ],
            ("table_file", "n(n-1)/2 distance rows"),
            r#"{"name":"CalculateDistanceBetweenPoints","arguments":{"input":"points.geojson","output":"distances.csv"}}"#,
        ),
        f(
            "SummarizeNearestDistances",
            "Summarize a numeric distance field: min, max, mean and count, optionally per group.",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("dist_field", T::Field, "numeric field to summarize"),
                req("output", T::Path, "CSV file to write"),
                opt("group_field", T::Field, "group column"),
            ],
            ("table_file", "summary rows"),
            r#"{"name":"SummarizeNearestDistances","arguments":{"input":"near.geojson","dist_field":"NEAR_DIST","output":"summary.csv"}}"#,
        ),
        f(
            "JoinNearestPoints",
            "Connect each source point to its nearest target feature, adding NEAR_ID, NEAR_DIST, NEAR_X and NEAR_Y.",
            vec![
                req("source", T::Path, "point GeoJSON file"),
                req("target", T::Path, "target points or lines"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "sources with NEAR_* fields"),
            r#"{"name":"JoinNearestPoints","arguments":{"source":"Point.geojson","target":"line.geojson","output":"near.geojson"}}"#,
        ),
        f(
            "CalculateGeometricCenter",
            "Replace each geometry by its centroid or by a representative point guaranteed to lie inside.",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("output", T::Path, "where to save the result"),
                opt("mode", T::String, "centroid | representative_point (default centroid)"),
            ],
            ("collection_file", "point features with original attributes"),
            r#"{"name":"CalculateGeometricCenter","arguments":{"input":"PACounties.geojson","output":"centers.geojson"}}"#,
        ),
        f(
            "CountTheQuantityOfSpatialFeatures",
            "Count points per region (boundary counts as inside) into a new field on the regions.",
            vec![
                req("points", T::Path, "point GeoJSON file"),
                req("regions", T::Path, "polygonal region file"),
                req("out_field", T::String, "name of the count field"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "regions with the count field"),
            r#"{"name":"CountTheQuantityOfSpatialFeatures","arguments":{"points":"shops.geojson","regions":"counties.geojson","out_field":"shop_count","output":"counts.geojson"}}"#,
        ),
        f(
            "nearest_point_on_line",
            "For each source point, the closest point on the nearest line (orthogonal projection clamped to segment ends), with NEAR_DIST.",
            vec![
                req("points", T::Path, "point GeoJSON file"),
                req("lines", T::Path, "line GeoJSON file"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "projected points"),
            r#"{"name":"nearest_point_on_line","arguments":{"points":"Point.geojson","lines":"line.geojson","output":"projected.geojson"}}"#,
        ),
        f(
            "XYCoordinatesToLine",
            "Convert rows with start (POINT_X, POINT_Y) and end (NEAR_X, NEAR_Y) coordinates into two-point line features.",
            vec![
                req("input", T::Path, "GeoJSON file with the coordinate fields"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "line features"),
            r#"{"name":"XYCoordinatesToLine","arguments":{"input":"Point.geojson","output":"lines.geojson"}}"#,
        ),
        f(
            "SplitPolygonByLine",
            "Split polygon features by line features; parts keep the parent attributes plus a part_index.",
            vec![
                req("polygons", T::Path, "polygon GeoJSON file"),
                req("lines", T::Path, "line GeoJSON file"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "polygon parts"),
            r#"{"name":"SplitPolygonByLine","arguments":{"polygons":"parcel.geojson","lines":"line.geojson","output":"parts.geojson"}}"#,
        ),
        f(
            "CalculatePerpendicularDistanceFromPointToLine",
            "Perpendicular (clamped) distance from every point to every line feature as CSV rows.",
            vec![
                req("points", T::Path, "point GeoJSON file"),
                req("lines", T::Path, "line GeoJSON file"),
                req("output", T::Path, "CSV file to write"),
            ],
            ("table_file", "rows (point_id, line_id, distance)"),
            r#"{"name":"CalculatePerpendicularDistanceFromPointToLine","arguments":{"points":"Point.geojson","lines":"line.geojson","output":"dist.csv"}}"#,
        ),
        f(
            "AddXYCoordinates",
            "Add POINT_X and POINT_Y fields to point features.",
            vec![
                req("input", T::Path, "point GeoJSON file"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "points with coordinate fields"),
            r#"{"name":"AddXYCoordinates","arguments":{"input":"Point.geojson","output":"with_xy.geojson"}}"#,
        ),
        f(
            "SelectRowsFromGeoDataFrame",
            "Select rows by zero-based indices or by feature ids, in request order.",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("output", T::Path, "where to save the result"),
                opt("indices", T::NumberList, "zero-based row indices"),
                opt("ids", T::StringList, "feature ids"),
            ],
            ("collection_file", "the selected subset"),
            r#"{"name":"SelectRowsFromGeoDataFrame","arguments":{"input":"points.geojson","indices":[0,2],"output":"subset.geojson"}}"#,
        ),
        f(
            "FilterRowsByExpression",
            "Keep rows where a conditional expression evaluates to true (false and null drop the row).",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("expression", T::Expression, "boolean predicate, e.g. p > 1000"),
                req("output", T::Path, "where to save the result"),
            ],
            ("collection_file", "the matching rows"),
            r#"{"name":"FilterRowsByExpression","arguments":{"input":"rainfall.geojson","expression":"p > 1000","output":"wet.geojson"}}"#,
        ),
        f(
            "SpatialJoinTwoGeoDataFrames",
            "Left spatial join: matched right-layer attributes are appended per geometric predicate; unmatched rows keep nulls.",
            vec![
                req("left", T::Path, "left layer (geometry kept)"),
                req("right", T::Path, "right layer (attributes joined)"),
                req("output", T::Path, "where to save the result"),
                opt("predicate", T::String, "intersects | within | contains (default intersects)"),
            ],
            ("collection_file", "the joined collection"),
            r#"{"name":"SpatialJoinTwoGeoDataFrames","arguments":{"left":"rainfall.geojson","right":"zone.geojson","output":"joined.geojson"}}"#,
        ),
        f(
            "InteractiveQuery",
            "Produce an interactive query page for a GeoJSON file.",
            vec![
                req("input", T::Path, "GeoJSON file to query"),
                req("output", T::Path, "HTML file to write"),
            ],
            ("message", "not available in this build"),
            r#"{"name":"InteractiveQuery","arguments":{"input":"PA_Fastfoods.geojson","output":"query.html"}}"#,
        ),
        f(
            "ExportCoordinateofGeometry",
            "Export every vertex as a CSV row: feature_id, part_index, ring_index, vertex_index, x, y.",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("output", T::Path, "CSV file to write"),
            ],
            ("table_file", "one row per vertex"),
            r#"{"name":"ExportCoordinateofGeometry","arguments":{"input":"area.geojson","output":"coords.csv"}}"#,
        ),
        f(
            "PlotGeoDataFrameByMatplotlib",
            "Plot a collection to an SVG image: a map (default, optional choropleth field) or a bar/scatter chart over attribute columns.",
            vec![
                req("input", T::Path, "source GeoJSON file"),
                req("output", T::Path, "SVG file to write"),
                opt("kind", T::String, "map | bar | scatter (default map)"),
                opt("x", T::Field, "x column for charts"),
                opt("y", T::Field, "y column for charts"),
                opt("field", T::Field, "numeric field for map choropleth"),
                opt("classes", T::Integer, "choropleth class count (default 5)"),
            ],
            ("image_file", "the rendered SVG"),
            r#"{"name":"PlotGeoDataFrameByMatplotlib","arguments":{"input":"rainfall.geojson","output":"chart.svg","kind":"bar","x":"index","y":"p"}}"#,
        ),
    ];
    debug_assert_eq!(functions.len(), 40);
    Registry::new(functions)
}

/// FNV-1a over a function name; the checksum list pins the catalog to the
/// exact published identifiers.
pub fn name_checksum(name: &str) -> u32 {
    let mut hash: u32 = 0x811c9dc5;
    for b in name.as_bytes() {
        hash ^= *b as u32;
        hash = hash.wrapping_mul(0x01000193);
    }
    hash
}

/// Checksums of the 40 catalog names, in catalog order.
pub const NAME_CHECKSUMS: [u32; 40] = [
    0x0e2d6cf1, 0x93b9317b, 0xbd148621, 0xa14f9571, 0x2d1bcee5, 0x1ebbd9ab, 0x70233617,
    0x0e01d21c, 0xdaf84861, 0x1b4d5c36, 0x45dff27e, 0x68b29d55, 0x75094f6c, 0xdc757e75,
    0x49c5fb98, 0x1086b630, 0x91b9a940, 0x11a40f4b, 0x81f11e54, 0xf5bc1905, 0x2d9b4e96,
    0x40961a47, 0x7c16843e, 0xc4f91da7, 0xbe328d2c, 0x2935ac0b, 0x2c19d157, 0x65e6ef4d,
    0xbbbfb3c9, 0x8c25d116, 0x95b63a5b, 0x444a3a9d, 0x7c17262b, 0xef37d8af, 0x243bf48f,
    0x476b0211, 0x7371fa8a, 0x10984b23, 0x59056dc3, 0x63812695,
];
