//! Argument parsing, dispatch and rendering for the `kummerlab` binary.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};
use thiserror::Error;

use kummerlab::clifford::{
    clifford_relation_check, cokernel_smith, gamma_group, VVector,
};
use kummerlab::kummer::{
    gs_summands, hilbert_scheme_cohomology, invariant_kummer_cohomology, kummer_cohomology,
    lsc_report, moduli_cohomology, noninvariant_profile,
};
use kummerlab::mukai::{ideal_sheaf_vector, moduli_dimension, mukai_pairing};
use kummerlab::{BigradedTable, MukaiVector};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "kummerlab", version, about = "Cohomology of generalized Kummer varieties")]
pub struct Command {
    #[command(subcommand)]
    pub verb: Verb,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Refuse cohomology computations with n above this value.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_n: u32,

    /// Worker threads for summand evaluation.
    #[arg(long, global = true, env = "KUMMERLAB_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub n: u32,
    /// Restrict to the deck-group invariant part.
    #[arg(long)]
    pub invariant: bool,
}

#[derive(Debug, Args)]
pub struct NArg {
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Betti numbers of Kum_n.
    Betti(TableArgs),
    /// Hodge numbers of Kum_n.
    Hodge(TableArgs),
    /// Summands of the partition decomposition.
    Decompose(NArg),
    /// Dimension of the non-invariant part per degree.
    GammaProfile(NArg),
    /// Degree bound report.
    Lsc(NArg),
    /// Betti numbers of the Hilbert scheme A^[n].
    Hilbert(NArg),
    /// Betti numbers of the moduli space of ideal sheaves, A × Kum_n.
    Moduli(NArg),
    /// Mukai lattice arithmetic.
    #[command(subcommand)]
    Mukai(MukaiVerb),
    /// Clifford action and cokernels.
    #[command(subcommand)]
    Clifford(CliffordVerb),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("vector").required(true).args(["x", "n"])))]
pub struct MukaiTarget {
    /// Mukai vector as r,c1a,c1b,c1c,c1d,c1e,c1f,s
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<MukaiVector>,
    /// Use the ideal-sheaf vector (1, 0, -(n+1)).
    #[arg(long)]
    pub n: Option<u32>,
}

impl MukaiTarget {
    fn resolve(&self) -> MukaiVector {
        match (self.x, self.n) {
            (Some(x), _) => x,
            (None, Some(n)) => ideal_sheaf_vector(n),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }

    fn params(&self) -> Value {
        match (self.x, self.n) {
            (Some(x), _) => json!({ "x": x.to_string() }),
            (_, Some(n)) => json!({ "n": n }),
            _ => json!({}),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum MukaiVerb {
    /// Mukai pairing of two vectors.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        x: MukaiVector,
        #[arg(long, allow_hyphen_values = true)]
        y: MukaiVector,
    },
    /// The dual vector (r, -c1, s).
    Dual(MukaiTarget),
    /// Primitivity and positivity.
    Classify(MukaiTarget),
    /// Dimension of the moduli space with this vector.
    Dim(MukaiTarget),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("vector").required(true).args(["v", "n"])))]
pub struct CliffordTarget {
    /// Mukai vector as r,c1a,c1b,c1c,c1d,c1e,c1f,s
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<MukaiVector>,
    /// Use the ideal-sheaf vector (1, 0, -(n+1)).
    #[arg(long)]
    pub n: Option<u32>,
}

impl CliffordTarget {
    fn resolve(&self) -> MukaiVector {
        match (self.v, self.n) {
            (Some(v), _) => v,
            (None, Some(n)) => ideal_sheaf_vector(n),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }

    fn params(&self) -> Value {
        match (self.v, self.n) {
            (Some(v), _) => json!({ "v": v.to_string() }),
            (_, Some(n)) => json!({ "n": n }),
            _ => json!({}),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CliffordVerb {
    /// Full elementary divisor chain of m_v.
    Snf(CliffordTarget),
    /// Invariant factors of the cokernel of m_v.
    Gamma(CliffordTarget),
    /// Check the Clifford relation, on all basis pairs unless a pair is given.
    #[command(group(ArgGroup::new("pair").args(["y1", "y2"]).multiple(true).requires_all(["y1", "y2"])))]
    Check {
        /// V-vector as a1,a2,a3,a4,w1,w2,w3,w4
        #[arg(long, allow_hyphen_values = true, value_parser = parse_v_vector)]
        y1: Option<VVector>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_v_vector)]
        y2: Option<VVector>,
    },
}

fn parse_v_vector(s: &str) -> Result<VVector, String> {
    let fields: Vec<&str> = s.split(',').map(str::trim).collect();
    if fields.len() != 8 {
        return Err(format!("expected 8 comma-separated integers (got {})", fields.len()));
    }
    let mut x = [0i64; 8];
    for (slot, field) in x.iter_mut().zip(&fields) {
        *slot = field.parse().map_err(|_| format!("invalid integer {field:?}"))?;
    }
    Ok(VVector::from_coordinates(x))
}

/// Parses arguments (without the program name).
pub fn parse<I, T>(argv: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("kummerlab")).chain(argv.into_iter().map(Into::into));
    Command::try_parse_from(args)
}

/// A computed result, ready to render in any format.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendering {
    pub verb: String,
    pub params: Value,
    pub result: Value,
    pub table: String,
    pub csv: String,
}

impl Rendering {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.table.clone(),
            Format::Csv => self.csv.clone(),
            Format::Json => {
                let doc = json!({
                    "verb": self.verb,
                    "params": self.params,
                    "result": self.result,
                });
                serde_json::to_string(&doc).expect("JSON values always serialize")
            }
        }
    }
}

pub fn configure_threads(cmd: &Command) -> Result<(), CliError> {
    let Some(threads) = cmd.threads else {
        return Ok(());
    };
    if threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn guard(n: u32, max_n: u32) -> Result<(), CliError> {
    if n > max_n {
        return Err(CliError::Usage(format!(
            "n = {n} exceeds --max-n {max_n}; raise --max-n to run it"
        )));
    }
    Ok(())
}

pub fn execute(cmd: &Command) -> Result<Rendering, CliError> {
    let max_n = cmd.max_n;
    match &cmd.verb {
        Verb::Betti(args) => {
            guard(args.n, max_n)?;
            let table = kummer_table(args)?;
            Ok(betti_rendering("betti", table_params(args), &table))
        }
        Verb::Hodge(args) => {
            guard(args.n, max_n)?;
            let table = kummer_table(args)?;
            Ok(hodge_rendering(table_params(args), &table))
        }
        Verb::Decompose(NArg { n }) => {
            guard(*n, max_n)?;
            Ok(decompose_rendering(*n))
        }
        Verb::GammaProfile(NArg { n }) => {
            guard(*n, max_n)?;
            let profile = noninvariant_profile(*n).map_err(domain)?;
            Ok(degree_rendering("gamma-profile", json!({ "n": n }), "profile", &profile))
        }
        Verb::Lsc(NArg { n }) => {
            guard(*n, max_n)?;
            lsc_rendering(*n)
        }
        Verb::Hilbert(NArg { n }) => {
            guard(*n, max_n)?;
            let table = hilbert_scheme_cohomology(*n).map_err(domain)?;
            Ok(betti_rendering("hilbert", json!({ "n": n }), &table))
        }
        Verb::Moduli(NArg { n }) => {
            guard(*n, max_n)?;
            let table = moduli_cohomology(*n).map_err(domain)?;
            Ok(betti_rendering("moduli", json!({ "n": n }), &table))
        }
        Verb::Mukai(verb) => Ok(mukai_rendering(verb)),
        Verb::Clifford(verb) => clifford_rendering(verb),
    }
}

/// Parse, execute and render in one step.
pub fn run<I, T>(argv: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cmd = parse(argv).map_err(|e| CliError::Usage(usage_hint(&e)))?;
    Ok(execute(&cmd)?.render(cmd.format))
}

/// The first paragraph of a clap error on one line, without the `error: ` prefix.
pub fn usage_hint(e: &clap::Error) -> String {
    let text = e.to_string();
    let summary: Vec<&str> = text
        .lines()
        .map(str::trim)
        .take_while(|l| !l.is_empty())
        .collect();
    let line = summary.join(" ");
    let line = line.trim_start_matches("error: ");
    if line.is_empty() {
        "invalid arguments (see --help)".into()
    } else {
        format!("{line} (see --help)")
    }
}

fn table_params(args: &TableArgs) -> Value {
    json!({ "n": args.n, "invariant": args.invariant })
}

fn kummer_table(args: &TableArgs) -> Result<BigradedTable, CliError> {
    if args.invariant {
        invariant_kummer_cohomology(args.n).map_err(domain)
    } else {
        kummer_cohomology(args.n).map_err(domain)
    }
}

fn betti_vector(table: &BigradedTable) -> Vec<BigUint> {
    table.betti_numbers()
}

fn betti_rendering(verb: &str, params: Value, table: &BigradedTable) -> Rendering {
    let betti = betti_vector(table);
    let text = join(betti.iter());
    let mut csv = String::from("degree,dimension");
    for (k, b) in betti.iter().enumerate() {
        if *b != BigUint::default() {
            write!(csv, "\n{k},{b}").unwrap();
        }
    }
    let rows: Vec<Value> = betti
        .iter()
        .enumerate()
        .map(|(k, b)| json!([k, b.to_string()]))
        .collect();
    Rendering {
        verb: verb.into(),
        params,
        result: json!({ "betti": rows }),
        table: text,
        csv,
    }
}

fn hodge_rendering(params: Value, table: &BigradedTable) -> Rendering {
    let mut csv = String::from("p,q,dimension");
    let mut rows = Vec::new();
    for (bd, v) in table.iter() {
        write!(csv, "\n{},{},{v}", bd.p, bd.q).unwrap();
        rows.push(json!([bd.p, bd.q, v.to_string()]));
    }
    Rendering {
        verb: "hodge".into(),
        params,
        result: json!({ "hodge": rows }),
        table: hodge_diamond(table),
        csv,
    }
}

/// Row `k` lists `h^{k,0}, …, h^{0,k}`.
fn hodge_diamond(table: &BigradedTable) -> String {
    let top = table.max_degree().unwrap_or(0).max(0);
    let dim = top / 2;
    let width = table
        .iter()
        .map(|(_, v)| v.to_string().len())
        .max()
        .unwrap_or(1);
    let label = top.to_string().len().max(3);
    let mut out = format!("{:>label$}  h^{{p,q}}, p decreasing left to right", "p+q");
    for k in 0..=top {
        let lo = (k - dim).max(0);
        let hi = k.min(dim);
        let cells: Vec<String> = (lo..=hi)
            .rev()
            .map(|p| format!("{:>width$}", table.get(p, k - p).to_string()))
            .collect();
        let indent = width * (dim - (hi - lo)) as usize;
        let gap = " ".repeat(width);
        write!(out, "\n{k:>label$}  {}{}", " ".repeat(indent), cells.join(&gap)).unwrap();
    }
    out
}

fn degree_rendering(
    verb: &str,
    params: Value,
    key: &str,
    profile: &BTreeMap<i64, BigUint>,
) -> Rendering {
    let mut table = Vec::new();
    let mut csv = String::from("degree,dimension");
    let mut rows = Vec::new();
    for (k, v) in profile {
        table.push(vec![k.to_string(), v.to_string()]);
        write!(csv, "\n{k},{v}").unwrap();
        rows.push(json!([k, v.to_string()]));
    }
    let mut result = Map::new();
    result.insert(key.into(), Value::Array(rows));
    Rendering {
        verb: verb.into(),
        params,
        result: Value::Object(result),
        table: align(&["degree", "dimension"], &[], &table),
        csv,
    }
}

fn decompose_rendering(n: u32) -> Rendering {
    let summands = gs_summands(n);
    let mut table = Vec::new();
    let mut csv = String::from("parts,d,copies,offset,betti");
    let mut rows = Vec::new();
    for s in &summands {
        let parts = s.partition.parts();
        let betti = betti_vector(&s.base_table);
        let parts_text = parts.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let betti_text = join(betti.iter());
        table.push(vec![
            s.partition.to_string(),
            s.d.to_string(),
            s.copies.to_string(),
            s.degree_offset.to_string(),
            betti_text.clone(),
        ]);
        write!(csv, "\n{parts_text},{},{},{},{betti_text}", s.d, s.copies, s.degree_offset).unwrap();
        rows.push(json!({
            "parts": parts,
            "d": s.d,
            "copies": s.copies.to_string(),
            "offset": s.degree_offset,
            "betti": betti.iter().map(BigUint::to_string).collect::<Vec<_>>(),
        }));
    }
    Rendering {
        verb: "decompose".into(),
        params: json!({ "n": n }),
        result: json!({ "summands": rows }),
        table: align(&["partition", "d", "copies", "offset", "betti"], &[0, 4], &table),
        csv,
    }
}

fn lsc_rendering(n: u32) -> Result<Rendering, CliError> {
    let report = lsc_report(n).map_err(domain)?;
    let proven_max = report.proven_degrees().end - 1;
    let mut result = json!({
        "n": report.n,
        "j": report.j,
        "bound": report.bound,
        "proven_degrees_max": proven_max,
        "min_noninvariant_degree": report.min_noninvariant_degree,
        "full_lsc": report.full_lsc,
    });
    let mut fields = vec![
        ("n", report.n.to_string()),
        ("j", report.j.to_string()),
        ("bound", report.bound.to_string()),
        ("proven_degrees_max", proven_max.to_string()),
        ("min_noninvariant_degree", report.min_noninvariant_degree.to_string()),
        ("full_lsc", report.full_lsc.to_string()),
    ];
    if let Some(mid) = &report.middle_noninvariant_dim {
        result["middle_noninvariant_dim"] = Value::String(mid.to_string());
        fields.push(("middle_noninvariant_dim", mid.to_string()));
    }
    Ok(key_value_rendering("lsc", json!({ "n": n }), result, &fields))
}

fn key_value_rendering(
    verb: &str,
    params: Value,
    result: Value,
    fields: &[(&str, String)],
) -> Rendering {
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let table = fields
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}"))
        .collect::<Vec<_>>()
        .join("\n");
    let mut csv = String::from("field,value");
    for (k, v) in fields {
        write!(csv, "\n{k},{v}").unwrap();
    }
    Rendering {
        verb: verb.into(),
        params,
        result,
        table,
        csv,
    }
}

fn mukai_rendering(verb: &MukaiVerb) -> Rendering {
    match verb {
        MukaiVerb::Pair { x, y } => {
            let value = mukai_pairing(x, y);
            Rendering {
                verb: "mukai pair".into(),
                params: json!({ "x": x.to_string(), "y": y.to_string() }),
                result: json!({ "pairing": value }),
                table: value.to_string(),
                csv: format!("pairing\n{value}"),
            }
        }
        MukaiVerb::Dual(target) => {
            let d = target.resolve().dual();
            Rendering {
                verb: "mukai dual".into(),
                params: target.params(),
                result: json!({ "dual": d.coordinates() }),
                table: d.to_string(),
                csv: format!("r,c1a,c1b,c1c,c1d,c1e,c1f,s\n{d}"),
            }
        }
        MukaiVerb::Classify(target) => {
            let c = target.resolve().classify();
            let case = c.positivity_case.map(|p| p.number());
            let result = json!({
                "primitive": c.primitive,
                "positive": c.positive,
                "positivity_case": case,
                "lattice_level": c.lattice_level,
            });
            let fields = [
                ("primitive", c.primitive.to_string()),
                ("positive", c.positive.to_string()),
                ("positivity_case", case.map_or("none".into(), |k| k.to_string())),
                ("lattice_level", c.lattice_level.to_string()),
            ];
            key_value_rendering("mukai classify", target.params(), result, &fields)
        }
        MukaiVerb::Dim(target) => {
            let d = moduli_dimension(&target.resolve());
            let result = json!({
                "dimension": d.dimension,
                "ext_rank": d.ext_rank,
                "at_least_eight": d.at_least_eight,
            });
            let fields = [
                ("dimension", d.dimension.to_string()),
                ("ext_rank", d.ext_rank.to_string()),
                ("at_least_eight", d.at_least_eight.to_string()),
            ];
            key_value_rendering("mukai dim", target.params(), result, &fields)
        }
    }
}

fn clifford_rendering(verb: &CliffordVerb) -> Result<Rendering, CliError> {
    match verb {
        CliffordVerb::Snf(target) => {
            let divisors = cokernel_smith(&target.resolve()).divisors;
            Ok(divisor_rendering("clifford snf", target.params(), &divisors))
        }
        CliffordVerb::Gamma(target) => {
            let divisors = gamma_group(&target.resolve()).map_err(domain)?;
            let mut r = divisor_rendering("clifford gamma", target.params(), &divisors);
            let order: BigInt = divisors.iter().product();
            r.result["order"] = Value::String(order.to_string());
            if divisors.is_empty() {
                r.table = "trivial".into();
            }
            Ok(r)
        }
        CliffordVerb::Check { y1, y2 } => {
            let (pairs, params) = match (y1, y2) {
                (Some(a), Some(b)) => (
                    vec![(*a, *b)],
                    json!({ "y1": join(a.coordinates().iter()), "y2": join(b.coordinates().iter()) }),
                ),
                _ => {
                    let basis: Vec<(VVector, VVector)> = (0..8)
                        .flat_map(|i| (0..8).map(move |j| (VVector::basis(i), VVector::basis(j))))
                        .collect();
                    (basis, json!({}))
                }
            };
            if let Some((a, b)) = pairs.iter().find(|(a, b)| !clifford_relation_check(a, b)) {
                return Err(CliError::Domain(format!(
                    "Clifford relation m(y1)m(y2) + m(y2)m(y1) = (y1,y2) fails for y1 = {:?}, y2 = {:?}",
                    a.coordinates(),
                    b.coordinates()
                )));
            }
            let count = pairs.len();
            Ok(Rendering {
                verb: "clifford check".into(),
                params,
                result: json!({ "pairs": count, "holds": true }),
                table: format!("clifford relation holds on {count} pair(s)"),
                csv: format!("pairs,holds\n{count},true"),
            })
        }
    }
}

fn divisor_rendering(verb: &str, params: Value, divisors: &[BigInt]) -> Rendering {
    let mut csv = String::from("index,divisor");
    for (i, d) in divisors.iter().enumerate() {
        write!(csv, "\n{},{d}", i + 1).unwrap();
    }
    Rendering {
        verb: verb.into(),
        params,
        result: json!({ "divisors": divisors.iter().map(BigInt::to_string).collect::<Vec<_>>() }),
        table: join(divisors.iter()),
        csv,
    }
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Columns listed in `left` are left-aligned, the rest right-aligned.
fn align(header: &[&str], left: &[usize], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, &w))| {
                if left.contains(&i) {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}
