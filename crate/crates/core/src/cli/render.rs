//! Text and JSON renderings of command results. Both are deterministic:
//! blocks are listed by index, elements in universe order, and every
//! number is an exact fraction.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use super::{InputKind, RunConfig};
use crate::approximation::{Precision, Regions, ThresholdProfile, VprsResult};
use crate::error::Result;
use crate::ingest::Instance;
use crate::lattice::{cayley_table, BetaGrid, LatticeElement, Law, LawReport, Operation};
use crate::subset::SubsetHandle;
use crate::universe::Partition;
use crate::verify::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub(super) struct Context<'a> {
    config: &'a RunConfig,
    instance: &'a Instance,
}

fn join_list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

impl<'a> Context<'a> {
    pub(super) fn new(config: &'a RunConfig, instance: &'a Instance) -> Self {
        Context { config, instance }
    }

    fn partition(&self) -> &Partition {
        &self.instance.partition
    }

    fn json(&self) -> bool {
        self.config.format == Format::Json
    }

    fn header(&self) -> String {
        let mut s = format!(
            "command: {}\ninput: {}\n",
            self.config.command.name(),
            self.config.input.display()
        );
        if let Some(name) = &self.instance.name {
            s.push_str(&format!("instance: {name}\n"));
        }
        s
    }

    fn input_json(&self) -> Value {
        let kind = match self.config.kind {
            InputKind::Instance => "instance",
            InputKind::Table => "table",
        };
        let mut input = Map::new();
        input.insert(
            "path".into(),
            json!(self.config.input.display().to_string()),
        );
        input.insert("kind".into(), json!(kind));
        if let Some(name) = &self.instance.name {
            input.insert("name".into(), json!(name));
        }
        if self.config.kind == InputKind::Table {
            input.insert("attributes".into(), json!(self.config.attributes));
            if let Some((c, v)) = &self.config.decision {
                input.insert("decision".into(), json!(format!("{c}={v}")));
            }
        }
        input.insert("elements".into(), json!(self.partition().universe().len()));
        input.insert("blocks".into(), json!(self.partition().block_count()));
        input.insert("target".into(), json!(self.instance.target.labels()));
        Value::Object(input)
    }

    fn document(&self, parameters: Value, result: Value, checks: Option<Value>) -> String {
        let mut doc = Map::new();
        doc.insert("command".into(), json!(self.config.command.name()));
        doc.insert("input".into(), self.input_json());
        doc.insert("parameters".into(), parameters);
        doc.insert("result".into(), result);
        if let Some(checks) = checks {
            doc.insert("checks".into(), checks);
        }
        let mut out =
            serde_json::to_string_pretty(&Value::Object(doc)).expect("json values serialize");
        out.push('\n');
        out
    }

    /// `{E6, E7} = {x10, x11, ...}`
    fn set_text(&self, set: &SubsetHandle) -> String {
        let blocks = self.partition().blocks_within(set);
        format!(
            "{{{}}} = {{{}}}",
            join_list(blocks.iter().map(|&b| Partition::block_name(b))),
            join_list(set.labels())
        )
    }

    fn block_names(&self, set: &SubsetHandle) -> String {
        format!(
            "{{{}}}",
            join_list(
                self.partition()
                    .blocks_within(set)
                    .into_iter()
                    .map(Partition::block_name)
            )
        )
    }

    /// Block numbers are 1-based, matching the `E<n>` names.
    fn set_json(&self, set: &SubsetHandle) -> Value {
        let blocks: Vec<usize> = self
            .partition()
            .blocks_within(set)
            .into_iter()
            .map(|b| b + 1)
            .collect();
        json!({ "blocks": blocks, "elements": set.labels() })
    }

    fn region_pairs(r: &Regions) -> [(&'static str, &SubsetHandle); 5] {
        [
            ("lower", &r.lower),
            ("upper", &r.upper),
            ("D", &r.positive),
            ("BN", &r.boundary),
            ("N", &r.negative),
        ]
    }

    pub(super) fn regions(
        &self,
        r: &Regions,
        beta: &Precision,
        gamma: Option<&Precision>,
    ) -> String {
        if self.json() {
            let mut params = Map::new();
            params.insert("beta".into(), json!(beta.to_string()));
            if let Some(g) = gamma {
                params.insert("gamma".into(), json!(g.to_string()));
            }
            let mut result = Map::new();
            for (name, set) in Self::region_pairs(r) {
                result.insert(name.into(), self.set_json(set));
            }
            result.insert("accuracy".into(), json!(r.accuracy.to_string()));
            return self.document(Value::Object(params), Value::Object(result), None);
        }
        let mut s = self.header();
        s.push_str(&format!("beta: {beta}\n"));
        if let Some(g) = gamma {
            s.push_str(&format!("gamma: {g}\n"));
        }
        for (name, set) in Self::region_pairs(r) {
            s.push_str(&format!("{name}: {}\n", self.set_text(set)));
        }
        s.push_str(&format!("accuracy: {}\n", r.accuracy));
        s
    }

    pub(super) fn thresholds(&self, t: &ThresholdProfile) -> String {
        let p = self.partition();
        if self.json() {
            let degrees: Vec<Value> = t
                .degrees
                .iter()
                .enumerate()
                .map(|(b, d)| json!({ "block": b + 1, "elements": p.block_labels(b), "degree": d.to_string() }))
                .collect();
            let result = json!({ "degrees": degrees, "critical": strings(&t.critical) });
            return self.document(json!({}), result, None);
        }
        let mut s = self.header();
        s.push_str("degrees:\n");
        for (b, d) in t.degrees.iter().enumerate() {
            s.push_str(&format!(
                "  {} = {{{}}}: {d}\n",
                Partition::block_name(b),
                join_list(p.block_labels(b))
            ));
        }
        if t.critical.is_empty() {
            s.push_str("critical: (empty)\n");
        } else {
            s.push_str(&format!("critical: {}\n", join_list(&t.critical)));
        }
        s
    }

    pub(super) fn sweep(&self, rows: &[VprsResult]) -> String {
        if self.json() {
            let rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let r = &row.regions;
                    json!({
                        "beta": row.beta.to_string(),
                        "lower_size": r.lower.len(),
                        "upper_size": r.upper.len(),
                        "accuracy": r.accuracy.to_string(),
                        "BN": self.set_json(&r.boundary),
                    })
                })
                .collect();
            return self.document(json!({}), json!({ "rows": rows }), None);
        }
        let mut table = vec![[
            "beta".to_string(),
            "|lower|".into(),
            "|upper|".into(),
            "accuracy".into(),
            "BN".into(),
        ]];
        for row in rows {
            let r = &row.regions;
            table.push([
                row.beta.to_string(),
                r.lower.len().to_string(),
                r.upper.len().to_string(),
                r.accuracy.to_string(),
                self.block_names(&r.boundary),
            ]);
        }
        let mut s = self.header();
        s.push_str(&aligned(&table));
        s
    }

    fn element_text(&self, e: &LatticeElement) -> String {
        let origin = match e.provenance() {
            Some((b, g)) => format!("({b}, {g})"),
            None => "(-)".into(),
        };
        format!(
            "{origin} lower {} upper {}",
            self.block_names(e.lower()),
            self.block_names(e.upper())
        )
    }

    fn element_json(&self, index: usize, e: &LatticeElement) -> Value {
        let provenance = e
            .provenance()
            .map(|(b, g)| json!([b.to_string(), g.to_string()]));
        json!({
            "index": index,
            "provenance": provenance,
            "lower": self.set_json(e.lower()),
            "upper": self.set_json(e.upper()),
        })
    }

    pub(super) fn lattice(
        &self,
        grid: &BetaGrid,
        family: &[LatticeElement],
        family_closed: bool,
        carrier: &[LatticeElement],
        report: &LawReport,
    ) -> Result<String> {
        let joins = cayley_table(carrier, Operation::Join)?;
        let meets = cayley_table(carrier, Operation::Meet)?;
        let escape = report.closure.escape;
        if self.json() {
            let table_json = |t: &[Vec<Option<usize>>]| -> Value {
                json!(t
                    .iter()
                    .map(|row| row.iter().map(|c| c.map(|i| i + 1)).collect::<Vec<_>>())
                    .collect::<Vec<_>>())
            };
            let result = json!({
                "grid": strings(grid.values()),
                "family": family.iter().enumerate().map(|(i, e)| self.element_json(i + 1, e)).collect::<Vec<_>>(),
                "family_closed": family_closed,
                "closure": carrier.iter().enumerate().map(|(i, e)| self.element_json(i + 1, e)).collect::<Vec<_>>(),
                "join": table_json(&joins),
                "meet": table_json(&meets),
            });
            let mut laws = Map::new();
            for law in Law::ALL {
                let outcome = report.outcome(law);
                let counterexample = outcome.counterexample.as_ref().map(|c| {
                    json!({
                        "operation": c.operation.to_string(),
                        "operands": c.operands.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "lhs": self.element_json(0, &c.lhs),
                        "rhs": self.element_json(0, &c.rhs),
                    })
                });
                laws.insert(
                    law.to_string(),
                    json!({ "holds": outcome.holds(), "counterexample": counterexample }),
                );
            }
            let checks = json!({
                "laws": laws,
                "closed": report.closure.closed(),
                "element_count": report.element_count,
                "checked_triples": report.checked_triples,
                "passed": report.all_hold() && report.closure.closed(),
            });
            let params = json!({ "grid": strings(grid.values()) });
            return Ok(self.document(params, result, Some(checks)));
        }

        let mut s = self.header();
        s.push_str(&format!("grid: {}\n", join_list(grid.values())));
        s.push_str(&format!("family: {} elements\n", family.len()));
        for (i, e) in family.iter().enumerate() {
            s.push_str(&format!("  F{} {}\n", i + 1, self.element_text(e)));
        }
        s.push_str(&format!(
            "family closed under join/meet: {}\n",
            if family_closed { "yes" } else { "no" }
        ));
        s.push_str(&format!("closure: {} elements\n", carrier.len()));
        for (i, e) in carrier.iter().enumerate() {
            s.push_str(&format!("  L{} {}\n", i + 1, self.element_text(e)));
        }
        for (name, table) in [("join", &joins), ("meet", &meets)] {
            s.push_str(&format!("{name}:\n"));
            let mut rows = vec![std::iter::once(String::new())
                .chain((1..=carrier.len()).map(|j| format!("L{j}")))
                .collect::<Vec<_>>()];
            for (i, row) in table.iter().enumerate() {
                rows.push(
                    std::iter::once(format!("L{}", i + 1))
                        .chain(
                            row.iter()
                                .map(|c| c.map_or("-".into(), |k| format!("L{}", k + 1))),
                        )
                        .collect(),
                );
            }
            for line in aligned(&rows).lines() {
                s.push_str(&format!("  {line}\n"));
            }
        }
        s.push_str("laws:\n");
        for law in Law::ALL {
            let outcome = report.outcome(law);
            match &outcome.counterexample {
                None => s.push_str(&format!("  {law}: PASS\n")),
                Some(c) => s.push_str(&format!(
                    "  {law}: FAIL ({} on {}: {} vs {})\n",
                    c.operation,
                    join_list(c.operands.iter().map(|i| format!("L{}", i + 1))),
                    self.element_text(&c.lhs),
                    self.element_text(&c.rhs)
                )),
            }
        }
        match escape {
            None => s.push_str("  closure: PASS\n"),
            Some((op, i, j)) => s.push_str(&format!(
                "  closure: FAIL ({op} of L{} and L{} escapes)\n",
                i + 1,
                j + 1
            )),
        }
        s.push_str(&format!(
            "checked: {} elements, {} triples\n",
            report.element_count, report.checked_triples
        ));
        Ok(s)
    }

    pub(super) fn check(&self, report: &CheckReport) -> String {
        if self.json() {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| serde_json::to_value(c).expect("check outcomes serialize"))
                .collect();
            let result = json!({ "grid": strings(&report.grid), "passed": report.all_passed() });
            return self.document(json!({}), result, Some(json!(checks)));
        }
        let mut s = self.header();
        s.push_str(&format!("grid: {}\n", join_list(&report.grid)));
        for c in &report.checks {
            match &c.detail {
                None => s.push_str(&format!(
                    "{}: {}\n",
                    c.name,
                    if c.passed { "PASS" } else { "FAIL" }
                )),
                Some(d) => s.push_str(&format!("{}: FAIL ({d})\n", c.name)),
            }
        }
        let passed = report.checks.iter().filter(|c| c.passed).count();
        s.push_str(&format!("summary: {passed}/{} PASS\n", report.checks.len()));
        s
    }
}

/// Left-aligned columns separated by two spaces, trailing space trimmed.
fn aligned<R: AsRef<[String]>>(rows: &[R]) -> String {
    let cols = rows.iter().map(|r| r.as_ref().len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.as_ref().get(c))
                .map(|x| x.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.as_ref().iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.push_str(&" ".repeat(widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
