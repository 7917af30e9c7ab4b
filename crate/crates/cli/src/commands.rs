use std::str::FromStr;

use clap::{Parser, Subcommand};

use sejoin_core::catalog::{load_catalog, Catalog};
use sejoin_core::join::{
    ambiguity_notes, integral_model, join, relative_indices, smoothness_certificate, JoinExpr,
    Verdict,
};
use sejoin_core::lattice::{enumerate_smooth, lattice_point, LatticePoint, PointCohomology};
use sejoin_core::search::{
    cor418_triples, regular5_status, smooth_sphere_join_predicate, sphere_join_certificate,
    validate_space,
};
use sejoin_core::{Error, SeSpace};

use crate::parse::{parse_expr, ParseError, Pretty};
use crate::render::{render, Format};
use crate::report::*;
use crate::verify::run_checks;

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_INDETERMINATE: u8 = 3;

/// Environment variable naming a catalog file to use instead of the
/// built-in one.
pub const CATALOG_ENV: &str = "SEJOIN_CATALOG";

#[derive(Debug, Parser)]
#[command(name = "sejoin", version, about = "Invariants of joins of Sasakian-Einstein spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Exit with status 3 when a result cannot be decided.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a join expression such as "S3 * T(1,2,3)".
    Eval { expr: String },
    /// Classify the points M(S1, S2; l, k) of the Einstein orbifold lattice.
    Lattice {
        s1: String,
        s2: String,
        /// Box of (l, k) values, written LxK.
        #[arg(long = "box", default_value = "5x5")]
        size: BoxSize,
        /// Only interior points passing the manifold test.
        #[arg(long)]
        smooth_only: bool,
    },
    /// Run one of the built-in searches.
    Search {
        #[command(subcommand)]
        query: Query,
    },
    /// Validate the catalog and recompute the reference joins.
    Verify,
    /// List the catalog, or show one entry.
    Catalog { name: Option<String> },
}

#[derive(Debug, Subcommand)]
pub enum Query {
    /// 3-Sasakian S(p) with p_i = 4 r_i + 1 pairwise coprime.
    Cor418 {
        #[arg(long, default_value_t = 5)]
        rmax: u64,
    },
    /// Regular Sasakian-Einstein structures on #k(S^2 x S^3).
    Regular5 { k: u64 },
    /// Smoothness of S^{2m+1} * S for a 7-manifold S of index 2.
    SmoothSphere {
        #[arg(long)]
        m: u64,
        expr: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxSize {
    pub l: u64,
    pub k: u64,
}

impl FromStr for BoxSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, k) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected LxK, got `{s}`"))?;
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
        Ok(BoxSize { l: num(l)?, k: num(k)? })
    }
}

/// Text for standard output plus the exit status.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: u8,
    /// Diagnostics for standard error.
    pub diagnostics: Vec<String>,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn parse(input: &str, e: ParseError) -> Self {
        let code = if e.is_syntax() { EXIT_PARSE } else { EXIT_INVALID };
        Failure::new(code, format!("{e}\n{}", e.pointer(input)))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::IndeterminateOrder(_) => EXIT_INDETERMINATE,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e.to_string())
    }
}

pub fn load_catalog_from_env() -> Result<(Catalog, String), Failure> {
    match std::env::var_os(CATALOG_ENV) {
        Some(path) => {
            let catalog = load_catalog(&path)?;
            Ok((catalog, path.to_string_lossy().into_owned()))
        }
        None => Ok((Catalog::builtin(), "builtin".into())),
    }
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let (catalog, source) = load_catalog_from_env()?;
    match &cli.command {
        Command::Eval { expr } => cmd_eval(&catalog, expr, cli.format, cli.strict),
        Command::Lattice {
            s1,
            s2,
            size,
            smooth_only,
        } => cmd_lattice(&catalog, s1, s2, *size, *smooth_only, cli.format, cli.strict),
        Command::Search { query } => cmd_search(&catalog, query, cli.format, cli.strict),
        Command::Verify => cmd_verify(&catalog, cli.format),
        Command::Catalog { name } => cmd_catalog(&catalog, &source, name.as_deref(), cli.format),
    }
}

fn parse_and_evaluate(catalog: &Catalog, text: &str) -> Result<(JoinExpr, SeSpace), Failure> {
    let expr = parse_expr(text, catalog).map_err(|e| Failure::parse(text, e))?;
    let space = expr.evaluate()?;
    Ok((expr, space))
}

/// Evaluates bottom-up, recording the certificate at every binary node.
fn certificates(expr: &JoinExpr, out: &mut Vec<CertificateReport>) -> Result<SeSpace, Error> {
    match expr {
        JoinExpr::Leaf(s) => Ok(s.clone()),
        JoinExpr::Join(a, b) => {
            let a = certificates(a, out)?;
            let b = certificates(b, out)?;
            if !a.is_identity() && !b.is_identity() {
                out.push(CertificateReport::new(&a, &b, &smoothness_certificate(&a, &b)));
            }
            join(&a, &b)
        }
    }
}

pub fn build_report(expr: &JoinExpr) -> Result<Report, Error> {
    let mut certs = Vec::new();
    let space = certificates(expr, &mut certs)?;
    let model = integral_model(expr)?;
    Ok(Report {
        schema: REPORT_SCHEMA.into(),
        expression: Pretty(expr).to_string(),
        space: SpaceReport::from(&space),
        certificates: certs,
        integral: model.as_ref().into(),
        notes: ambiguity_notes(&space),
        validation: validate_space(&space).iter().map(ViolationReport::from).collect(),
    })
}

fn finish(text: String, strict: bool, indeterminate: bool, what: &str) -> Output {
    if strict && indeterminate {
        Output {
            text,
            code: EXIT_INDETERMINATE,
            diagnostics: vec![format!("{what} is indeterminate (--strict)")],
        }
    } else {
        Output {
            text,
            code: 0,
            diagnostics: Vec::new(),
        }
    }
}

pub fn cmd_eval(catalog: &Catalog, text: &str, format: Format, strict: bool) -> Result<Output, Failure> {
    let expr = parse_expr(text, catalog).map_err(|e| Failure::parse(text, e))?;
    let report = build_report(&expr)?;
    let rendered = render(&report, format);
    if !report.validation.is_empty() {
        return Ok(Output {
            text: rendered,
            code: EXIT_INVALID,
            diagnostics: report
                .validation
                .iter()
                .map(|v| format!("invariant violation in `{}`: {}", v.space, v.rule))
                .collect(),
        });
    }
    let indeterminate = report.is_indeterminate();
    Ok(finish(rendered, strict, indeterminate, "result"))
}

fn point_report(p: &LatticePoint) -> PointReport {
    let c = &p.classification;
    PointReport {
        l: p.l,
        k: p.k,
        interior: p.is_interior(),
        sasakian_einstein: c.sasakian_einstein,
        orb_simply_connected: c.orb_simply_connected,
        smooth: c.smooth.into(),
        cohomology: match &c.rational_cohomology {
            PointCohomology::Betti(b) => CohomologyReport::Betti { betti: betti_nums(b) },
            PointCohomology::Product {
                descriptor,
                advisory_betti,
            } => CohomologyReport::Product {
                descriptor: descriptor.clone(),
                advisory_betti: betti_nums(advisory_betti),
            },
        },
        notes: p.notes.clone(),
    }
}

pub fn cmd_lattice(
    catalog: &Catalog,
    t1: &str,
    t2: &str,
    size: BoxSize,
    smooth_only: bool,
    format: Format,
    strict: bool,
) -> Result<Output, Failure> {
    let (_, s1) = parse_and_evaluate(catalog, t1)?;
    let (_, s2) = parse_and_evaluate(catalog, t2)?;
    for s in [&s1, &s2] {
        if s.is_identity() {
            return Err(Failure::new(EXIT_INVALID, "lattice factors must not be the circle"));
        }
    }
    let points: Vec<LatticePoint> = if smooth_only {
        enumerate_smooth(&s1, &s2, size.l, size.k)?
    } else {
        let mut v = Vec::new();
        for l in 0..=size.l {
            for k in 0..=size.k {
                if (l, k) != (0, 0) {
                    v.push(lattice_point(&s1, &s2, l, k)?);
                }
            }
        }
        v
    };
    let (l1, l2) = relative_indices(&s1, &s2);
    let report = LatticeReport {
        schema: LATTICE_SCHEMA.into(),
        s1: s1.name.clone(),
        s2: s2.name.clone(),
        relative_indices: [l1, l2],
        box_size: [size.l, size.k],
        smooth_only,
        points: points.iter().map(point_report).collect(),
    };
    let indeterminate = report.points.iter().any(|p| p.smooth == TriValue::Unknown);
    Ok(finish(render(&report, format), strict, indeterminate, "smoothness of some point"))
}

pub fn cmd_search(catalog: &Catalog, query: &Query, format: Format, strict: bool) -> Result<Output, Failure> {
    let (report, indeterminate) = match query {
        Query::Cor418 { rmax } => {
            let res = cor418_triples(*rmax)?;
            let hits = res
                .hits
                .iter()
                .map(|h| TripleReport {
                    r: h.r,
                    p: h.p,
                    order: (&h.order).into(),
                    smooth_with_del_pezzo: h
                        .certificates
                        .iter()
                        .filter(|(_, c)| c.verdict == Verdict::Smooth)
                        .map(|(l, _)| *l)
                        .collect(),
                })
                .collect();
            let report = SearchReport {
                schema: SEARCH_SCHEMA.into(),
                query: res.query,
                bound: res.bound,
                result: SearchHits::Triples(hits),
            };
            (report, false)
        }
        Query::Regular5 { k } => {
            let report = SearchReport {
                schema: SEARCH_SCHEMA.into(),
                query: format!("regular5 k={k}"),
                bound: "exact".into(),
                result: SearchHits::Regular5 {
                    k: *k,
                    status: regular5_status(*k).to_string(),
                },
            };
            (report, false)
        }
        Query::SmoothSphere { m, expr } => {
            let (_, s) = parse_and_evaluate(catalog, expr)?;
            let predicate = smooth_sphere_join_predicate(*m, &s)?;
            let cert = sphere_join_certificate(*m, &s)?;
            let sphere = sejoin_core::catalog::make_sphere(*m)?;
            let report = SearchReport {
                schema: SEARCH_SCHEMA.into(),
                query: format!("smooth-sphere m={m} {}", s.name),
                bound: "exact".into(),
                result: SearchHits::SphereJoin {
                    m: *m,
                    space: s.name.clone(),
                    predicate: predicate.as_str().into(),
                    certificate: CertificateReport::new(&sphere, &s, &cert),
                },
            };
            (report, predicate == Verdict::Indeterminate)
        }
    };
    Ok(finish(render(&report, format), strict, indeterminate, "search result"))
}

pub fn cmd_verify(catalog: &Catalog, format: Format) -> Result<Output, Failure> {
    let report = VerifyReport {
        schema: VERIFY_SCHEMA.into(),
        checks: run_checks(catalog),
    };
    let failures = report.failures();
    Ok(Output {
        text: render(&report, format),
        code: if failures == 0 { 0 } else { EXIT_INVALID },
        diagnostics: if failures == 0 {
            Vec::new()
        } else {
            vec![format!("{failures} check(s) failed")]
        },
    })
}

pub fn cmd_catalog(catalog: &Catalog, source: &str, name: Option<&str>, format: Format) -> Result<Output, Failure> {
    let entries: Vec<SpaceReport> = match name {
        Some(n) => {
            let s = catalog
                .get(n)
                .ok_or_else(|| Failure::new(EXIT_PARSE, format!("unknown catalog entry `{n}`")))?;
            vec![s.into()]
        }
        None => catalog.entries().iter().map(SpaceReport::from).collect(),
    };
    let report = CatalogReport {
        schema: CATALOG_SCHEMA.into(),
        source: source.into(),
        entries,
    };
    Ok(Output {
        text: render(&report, format),
        code: 0,
        diagnostics: Vec::new(),
    })
}
