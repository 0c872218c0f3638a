use geoagent_model::AttributeValue;
use indexmap::IndexMap;

/// A geometry-free attribute table: named columns, one property map per row.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularData {
    pub columns: Vec<String>,
    pub rows: Vec<IndexMap<String, AttributeValue>>,
}

impl TabularData {
    pub fn new(columns: Vec<String>) -> Self {
        TabularData {
            columns,
            rows: Vec::new(),
        }
    }

    /// Push a row given in column order.
    pub fn push_row(&mut self, values: Vec<AttributeValue>) {
        debug_assert_eq!(values.len(), self.columns.len());
        let row = self
            .columns
            .iter()
            .cloned()
            .zip(values)
            .collect::<IndexMap<_, _>>();
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn cell(&self, row: usize, column: &str) -> Option<&AttributeValue> {
        self.rows.get(row).and_then(|r| r.get(column))
    }
}
