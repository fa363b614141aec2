//! Loading approximation spaces: explicit JSON instances and attribute-value
//! tables whose indiscernibility relation induces the partition.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::SubsetHandle;
use crate::universe::{Partition, Universe};

/// Serialized form of an approximation space plus a target set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub universe: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    pub target: Vec<String>,
}

/// A validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: Option<String>,
    pub partition: Partition,
    pub target: SubsetHandle,
}

impl InstanceSpec {
    /// Validates the spec, reporting the offending position as a JSON path
    /// such as `blocks[2][0]`.
    pub fn build(&self) -> Result<Instance> {
        let universe = Universe::new(self.universe.iter().cloned()).map_err(|e| {
            let at = match &e {
                Error::DuplicateLabel(l) => self
                    .universe
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| *x == l)
                    .nth(1)
                    .map(|(i, _)| format!("universe[{i}]")),
                _ => None,
            };
            e.at(at.unwrap_or_else(|| "universe".into()))
        })?;
        let partition = Partition::new(&universe, &self.blocks).map_err(|e| {
            let at = self.locate_block_error(&e);
            e.at(at)
        })?;
        let target = SubsetHandle::from_labels(&universe, &self.target).map_err(|e| {
            let at = match &e {
                Error::UnknownLabel(l) => self
                    .target
                    .iter()
                    .position(|x| x == l)
                    .map(|k| format!("target[{k}]")),
                _ => None,
            };
            e.at(at.unwrap_or_else(|| "target".into()))
        })?;
        Ok(Instance {
            name: self.name.clone(),
            partition,
            target,
        })
    }

    fn locate_block_error(&self, e: &Error) -> String {
        let occurrences = |label: &str| -> Vec<String> {
            self.blocks
                .iter()
                .enumerate()
                .flat_map(|(b, block)| {
                    block
                        .iter()
                        .enumerate()
                        .filter(move |(_, x)| *x == label)
                        .map(move |(k, _)| format!("blocks[{b}][{k}]"))
                })
                .collect()
        };
        match e {
            Error::UnknownLabel(l) => occurrences(l).into_iter().next(),
            Error::NotDisjoint(l) => occurrences(l).into_iter().nth(1),
            Error::EmptyBlock(b) => Some(format!("blocks[{b}]")),
            Error::NotCovering(l) => self
                .universe
                .iter()
                .position(|x| x == l)
                .map(|i| format!("universe[{i}]")),
            _ => None,
        }
        .unwrap_or_else(|| "blocks".into())
    }

    /// Canonical spec of a validated instance: universe order, blocks in
    /// partition order with members in universe order, target in universe
    /// order.
    pub fn from_instance(instance: &Instance) -> Self {
        let p = &instance.partition;
        InstanceSpec {
            name: instance.name.clone(),
            universe: p.universe().labels().to_vec(),
            blocks: (0..p.block_count())
                .map(|b| p.block_labels(b).into_iter().map(String::from).collect())
                .collect(),
            target: instance
                .target
                .labels()
                .into_iter()
                .map(String::from)
                .collect(),
        }
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(document: &str) -> Result<InstanceSpec> {
    let spec: InstanceSpec = serde_json::from_str(document).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    spec.build()?;
    Ok(spec)
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

pub fn emit_instance(spec: &InstanceSpec) -> String {
    let mut out = serde_json::to_string_pretty(spec).expect("instance specs always serialize");
    out.push('\n');
    out
}

/// An attribute-value table. Cells are kept as exact text.
#[derive(Debug, Clone)]
pub struct InfoTable {
    universe: Arc<Universe>,
    attributes: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl InfoTable {
    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn objects(&self) -> &[String] {
        self.universe.labels()
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    /// Cell of `object` (by row index) under `attribute`.
    pub fn value(&self, object: usize, attribute: usize) -> &str {
        &self.rows[object][attribute]
    }

    fn column(&self, name: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }
}

/// Parses a comma-separated table: a header row, then one row per object
/// with the object label in the first column. Quoted commas are not
/// supported; empty cells count as missing and are rejected.
pub fn parse_table(document: &str) -> Result<InfoTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .quoting(false)
        .from_reader(document.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        None => return Err(Error::EmptyTable),
        Some(r) => r.map_err(csv_error)?,
    };
    let width = header.len();
    if header.iter().any(str::is_empty) {
        return Err(Error::Parse {
            line: 1,
            column: 0,
            message: "empty column name in header".into(),
        });
    }
    let attributes: Vec<String> = header.iter().skip(1).map(String::from).collect();
    for (i, a) in attributes.iter().enumerate() {
        if attributes[..i].contains(a) {
            return Err(Error::Parse {
                line: 1,
                column: 0,
                message: format!("duplicate column {a:?}"),
            });
        }
    }

    let mut objects = Vec::new();
    let mut rows = Vec::new();
    let mut seen = HashMap::new();
    for (n, record) in records.enumerate() {
        let record = record.map_err(csv_error)?;
        let row_number = n + 1;
        if record.len() != width || record.iter().any(str::is_empty) {
            return Err(Error::RaggedRow(row_number));
        }
        let label = record[0].to_string();
        if seen.insert(label.clone(), row_number).is_some() {
            return Err(Error::DuplicateObject(label));
        }
        objects.push(label);
        rows.push(record.iter().skip(1).map(String::from).collect());
    }
    if objects.is_empty() {
        return Err(Error::EmptyTable);
    }
    let universe = Universe::new(objects)?;
    Ok(InfoTable {
        universe,
        attributes,
        rows,
    })
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        column: 0,
        message: e.to_string(),
    }
}

/// Groups objects that agree on every listed attribute. Blocks appear in
/// order of their first object.
pub fn indiscernibility<S: AsRef<str>>(table: &InfoTable, attributes: &[S]) -> Result<Partition> {
    if attributes.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    let columns = attributes
        .iter()
        .map(|a| table.column(a.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let mut block_of_tuple: HashMap<Vec<&str>, usize> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (object, row) in table.rows.iter().enumerate() {
        let tuple: Vec<&str> = columns.iter().map(|&c| row[c].as_str()).collect();
        let b = *block_of_tuple.entry(tuple).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(object);
    }
    Ok(Partition::from_validated(&table.universe, blocks))
}

/// Objects whose `decision` cell equals `value` exactly.
pub fn target_from_decision(
    table: &InfoTable,
    decision: &str,
    value: &str,
) -> Result<SubsetHandle> {
    let column = table.column(decision)?;
    Ok(SubsetHandle::from_indices(
        &table.universe,
        table
            .rows
            .iter()
            .enumerate()
            .filter(|(_, row)| row[column] == value)
            .map(|(i, _)| i),
    ))
}
