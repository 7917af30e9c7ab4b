//! Text renderings. JSON goes through serde; the table and TSV forms share
//! a row model where the first row is the header.

use clap::ValueEnum;
use serde::Serialize;

use crate::report::{
    join_nums, CatalogReport, CohomologyReport, IntegralReport, LatticeReport, Report,
    SearchHits, SearchReport, VerifyReport,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Tsv,
}

pub trait Tabular {
    fn rows(&self) -> Vec<Vec<String>>;
}

pub fn render<T: Serialize + Tabular>(doc: &T, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Tsv => doc
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|c| c.replace(['\t', '\n'], " ")).collect();
                cells.join("\t") + "\n"
            })
            .collect(),
        Format::Table => table(&doc.rows()),
    }
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<w$}  ", w = widths[c]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn kv(key: &str, value: impl ToString) -> Vec<String> {
    vec![key.to_string(), value.to_string()]
}

impl Tabular for Report {
    fn rows(&self) -> Vec<Vec<String>> {
        let s = &self.space;
        let mut rows = vec![
            kv("field", "value"),
            kv("expression", &self.expression),
            kv("name", &s.name),
            kv("family", &s.family),
            kv("dim", s.dim),
            kv("n", s.n),
            kv("index", s.index),
            kv("order", &s.order),
            kv("regular", s.regular),
            kv("smooth", s.smooth),
            kv("simply_connected", s.simply_connected),
            kv("betti", join_nums(&s.betti)),
            kv("three_sasakian", s.three_sasakian),
            kv("homogeneous", s.homogeneous),
            kv("se_irreducible", s.se_irreducible),
            kv("ke_certified", s.ke_certified),
            kv("moduli_dim_lower", s.moduli_dim_lower),
        ];
        if !s.factors.is_empty() {
            rows.push(kv("factors", s.factors.join(" * ")));
        }
        for c in &self.certificates {
            rows.push(kv(
                "certificate",
                format!(
                    "{} * {}: l=({},{}) m=({},{}) g={} {}",
                    c.left, c.right, c.l1, c.l2, c.m1, c.m2, c.g, c.verdict
                ),
            ));
        }
        match &self.integral {
            IntegralReport::Model { rule, scope, groups, .. } => {
                rows.push(kv("integral", format!("{rule} ({scope})")));
                for (q, g) in groups.iter().enumerate() {
                    rows.push(kv(&format!("H^{q}"), &g.text));
                }
            }
            IntegralReport::RationalOnly(text) => rows.push(kv("integral", text)),
        }
        for note in &self.notes {
            rows.push(kv("note", note));
        }
        if self.validation.is_empty() {
            rows.push(kv("validation", "ok"));
        }
        for v in &self.validation {
            rows.push(kv(
                "validation",
                format!("{}: expected {}, found {}", v.rule, v.expected, v.found),
            ));
        }
        rows
    }
}

impl Tabular for LatticeReport {
    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![["l", "k", "tags", "smooth", "cohomology"].map(String::from).to_vec()];
        for p in &self.points {
            let mut tags = Vec::new();
            if p.sasakian_einstein {
                tags.push("SE");
            }
            if p.orb_simply_connected {
                tags.push("orb-sc");
            }
            if !p.interior {
                tags.push("boundary");
            }
            let cohomology = match &p.cohomology {
                CohomologyReport::Betti { betti } => join_nums(betti),
                CohomologyReport::Product { descriptor, advisory_betti } => {
                    format!("{descriptor} [{}]", join_nums(advisory_betti))
                }
            };
            let tags = if tags.is_empty() { "-".to_string() } else { tags.join(",") };
            rows.push(vec![
                p.l.to_string(),
                p.k.to_string(),
                tags,
                p.smooth.to_string(),
                cohomology,
            ]);
        }
        rows
    }
}

impl Tabular for SearchReport {
    fn rows(&self) -> Vec<Vec<String>> {
        match &self.result {
            SearchHits::Triples(hits) => {
                let mut rows = vec![["r", "p", "order", "smooth_with_Sk"].map(String::from).to_vec()];
                for h in hits {
                    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                    rows.push(vec![
                        list(&h.r),
                        list(&h.p),
                        h.order.to_string(),
                        list(&h.smooth_with_del_pezzo),
                    ]);
                }
                rows
            }
            SearchHits::Regular5 { k, status } => vec![kv("k", "status"), kv(&k.to_string(), status)],
            SearchHits::SphereJoin {
                m,
                space,
                predicate,
                certificate: c,
            } => vec![
                kv("field", "value"),
                kv("m", m),
                kv("space", space),
                kv("predicate", predicate),
                kv(
                    "certificate",
                    format!("l=({},{}) m=({},{}) g={} {}", c.l1, c.l2, c.m1, c.m2, c.g, c.verdict),
                ),
            ],
        }
    }
}

impl Tabular for CatalogReport {
    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![["name", "family", "dim", "index", "order", "smooth", "betti"]
            .map(String::from)
            .to_vec()];
        for s in &self.entries {
            rows.push(vec![
                s.name.clone(),
                s.family.clone(),
                s.dim.to_string(),
                s.index.to_string(),
                s.order.to_string(),
                s.smooth.to_string(),
                join_nums(&s.betti),
            ]);
        }
        rows
    }
}

impl Tabular for VerifyReport {
    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![["status", "check", "detail"].map(String::from).to_vec()];
        for c in &self.checks {
            let status = if c.ok { "ok" } else { "FAIL" };
            rows.push(vec![status.into(), c.name.clone(), c.detail.clone()]);
        }
        rows
    }
}
