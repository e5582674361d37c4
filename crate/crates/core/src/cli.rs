//! Batch command-line front end.
//!
//! Exit status: 0 on success, 2 for invalid input, 3 when the requested
//! route cannot handle the graph (inexact lengths, orbit cap, …), 1 for
//! internal failures.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expoly::ExponentialPolynomial;
use crate::graph::{BondDigraph, BondId, Length, MetricGraph, VertexId};
use crate::orbits::{
    default_deletions, ghost_reduce, EnumerationOptions, IrreduciblePseudoOrbit, OrbitExpansion,
    DEFAULT_ORBIT_CAP,
};
use crate::rational::{format_rational, rational_gcd, Rational};
use crate::resonance::{
    count_resonances, find_roots, numeric_counting, reduce_with_base, CountingEstimate,
    ResonanceFamily,
};
use crate::scattering::{classify_weyl, effective_size, ScatteringSystem};
use crate::svg;

#[derive(Debug, Parser)]
#[command(name = "qgraph", version, about = "Resonances of open quantum graphs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; `resonances` and `count` default to csv, everything
    /// else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Abort pseudo-orbit enumeration beyond this many orbits.
    #[arg(long, global = true, env = "QGRAPH_ORBIT_CAP", default_value_t = DEFAULT_ORBIT_CAP)]
    pub orbit_cap: usize,

    /// Worker threads for enumeration and contour counting.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Graph file (JSON).
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a graph file and report every violation.
    Validate(Input),
    /// Resonance condition as an exponential polynomial.
    Condition(Input),
    /// Irreducible pseudo orbits.
    Orbits(Input),
    /// Ghost-edge reduction and the resulting orbits and condition.
    Reduce {
        #[command(flatten)]
        input: Input,
        /// `vertex:bond`, e.g. `2:1` or `1:3^`; repeatable. Defaults to one
        /// deletion per balanced vertex.
        #[arg(long = "delete", value_name = "V:BOND")]
        delete: Vec<String>,
    },
    /// Effective size from the nonzero eigenvalues of S (equilateral graphs).
    EffectiveSize(Input),
    /// Weyl or non-Weyl, with balanced vertices as witnesses.
    Classify(Input),
    /// Resonances with |k| ≤ rmax.
    Resonances {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 20.0)]
        rmax: f64,
        /// Also write a scatter plot.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Counting function N(R) and its slope.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 100.0)]
        rmax: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// Count by the argument principle even when lengths are exact.
        #[arg(long)]
        numeric: bool,
    },
    /// det(I − e^{ikL}S) at given wavenumbers.
    Evaluate {
        #[command(flatten)]
        input: Input,
        /// `re,im`; repeatable.
        #[arg(
            long = "k",
            value_name = "RE,IM",
            required = true,
            allow_hyphen_values = true
        )]
        k: Vec<String>,
    },
}

impl Command {
    fn input(&self) -> &Input {
        match self {
            Command::Validate(i)
            | Command::Condition(i)
            | Command::Orbits(i)
            | Command::EffectiveSize(i)
            | Command::Classify(i) => i,
            Command::Reduce { input, .. }
            | Command::Resonances { input, .. }
            | Command::Count { input, .. }
            | Command::Evaluate { input, .. } => input,
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Resonances { .. } | Command::Count { .. } => Format::Csv,
            _ => Format::Json,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Internal(_) | Error::Io(_) => 1,
        e if e.is_capability() => 3,
        _ => 2,
    }
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut buffer = Vec::new();
    let result = match config.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(config, &mut buffer)),
            Err(e) => Err(Error::InvalidArgument(format!(
                "cannot start {n} threads: {e}"
            ))),
        },
        None => dispatch(config, &mut buffer),
    };
    let result = result.and_then(|code| {
        out.write_all(&buffer)?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Context {
    graph: MetricGraph,
    format: Format,
    options: EnumerationOptions,
}

impl Context {
    fn system(&self) -> Result<(BondDigraph, ScatteringSystem)> {
        ScatteringSystem::from_graph(&self.graph)
    }

    fn expansion(&self) -> Result<(BondDigraph, ScatteringSystem, OrbitExpansion)> {
        let (bonds, sys) = self.system()?;
        let e = OrbitExpansion::for_system(&sys, &bonds, self.options)?;
        Ok((bonds, sys, e))
    }

    /// Common exact edge length, for the "multiples of ℓ" fields.
    fn unit(&self) -> Option<Rational> {
        self.graph
            .equilateral_length()
            .and_then(Length::exact)
            .cloned()
    }

    /// gcd of the exact edge lengths.
    fn base_length(&self) -> Result<Rational> {
        let lengths = self.graph.exact_lengths().ok_or(Error::InexactLengths)?;
        lengths
            .into_iter()
            .reduce(|a, b| rational_gcd(&a, &b))
            .ok_or_else(|| Error::InvalidArgument("graph has no edges".into()))
    }
}

fn dispatch(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let command = &config.command;
    let graph = MetricGraph::from_json_file(&command.input().input)?;
    let ctx = Context {
        graph,
        format: config.format.unwrap_or_else(|| command.default_format()),
        options: EnumerationOptions {
            cap: config.orbit_cap,
            parallel: true,
        },
    };
    match command {
        Command::Validate(_) => validate(&ctx, out),
        Command::Condition(_) => condition(&ctx, out).map(|_| 0),
        Command::Orbits(_) => orbits(&ctx, out).map(|_| 0),
        Command::Reduce { delete, .. } => reduce(&ctx, delete, out).map(|_| 0),
        Command::EffectiveSize(_) => effective(&ctx, out).map(|_| 0),
        Command::Classify(_) => classify(&ctx, out).map(|_| 0),
        Command::Resonances { rmax, svg, .. } => {
            resonances(&ctx, *rmax, svg.as_ref(), out).map(|_| 0)
        }
        Command::Count {
            rmax,
            steps,
            numeric,
            ..
        } => count(&ctx, *rmax, *steps, *numeric, out).map(|_| 0),
        Command::Evaluate { k, .. } => evaluate(&ctx, k, out).map(|_| 0),
    }
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("json value serializes")
    )?;
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

fn in_units(length: &Rational, unit: Option<&Rational>) -> Option<String> {
    unit.map(|u| format_rational(&(length / u)))
}

fn validate(ctx: &Context, out: &mut dyn Write) -> Result<i32> {
    let report = ctx.graph.validate();
    let violations: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({
                "valid": report.is_valid(),
                "n_vertices": ctx.graph.vertices.len(),
                "n_edges": ctx.graph.n_edges(),
                "n_halflines": ctx.graph.n_halflines(),
                "violations": report.violations,
                "messages": violations,
            }),
        )?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = violations.into_iter().map(|v| vec![v]).collect();
            emit_csv(out, &["violation"], &rows)?;
        }
    }
    Ok(if report.is_valid() { 0 } else { 2 })
}

fn condition_json(cond: &ExponentialPolynomial, unit: Option<&Rational>) -> Value {
    let terms: Vec<Value> = cond
        .terms()
        .map(|(l, c)| {
            let mut t = json!({"length": format_rational(l), "coefficient": format_rational(c)});
            if let Some(m) = in_units(l, unit) {
                t["length_in_l"] = json!(m);
            }
            t
        })
        .collect();
    json!({ "terms": terms })
}

fn condition_csv(
    cond: &ExponentialPolynomial,
    unit: Option<&Rational>,
    out: &mut dyn Write,
) -> Result<()> {
    let rows: Vec<Vec<String>> = cond
        .terms()
        .map(|(l, c)| {
            vec![
                format_rational(l),
                in_units(l, unit).unwrap_or_default(),
                format_rational(c),
            ]
        })
        .collect();
    emit_csv(out, &["length", "length_in_l", "coefficient"], &rows)
}

fn condition(ctx: &Context, out: &mut dyn Write) -> Result<()> {
    ctx.graph.exact_lengths().ok_or(Error::InexactLengths)?;
    let (_, _, e) = ctx.expansion()?;
    let cond = e.condition()?;
    let unit = ctx.unit();
    match ctx.format {
        Format::Json => emit_json(out, &condition_json(&cond, unit.as_ref())),
        Format::Csv => condition_csv(&cond, unit.as_ref(), out),
    }
}

fn orbit_json(e: &OrbitExpansion, o: &IrreduciblePseudoOrbit, unit: Option<&Rational>) -> Value {
    let mut v = json!({
        "cycles": e.orbit_labels(o),
        "m": o.m(),
        "n_bonds": o.n_bonds,
        "amplitude": format_rational(&o.amplitude),
        "length": o.length.to_string(),
    });
    if let Some(m) = o.length.exact().and_then(|l| in_units(l, unit)) {
        v["length_in_l"] = json!(m);
    }
    v
}

fn emit_orbits(ctx: &Context, e: &OrbitExpansion, out: &mut dyn Write) -> Result<()> {
    let unit = ctx.unit();
    match ctx.format {
        Format::Json => emit_json(
            out,
            &Value::Array(
                e.orbits
                    .iter()
                    .map(|o| orbit_json(e, o, unit.as_ref()))
                    .collect(),
            ),
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = e
                .orbits
                .iter()
                .map(|o| {
                    let cycles: String = e
                        .orbit_labels(o)
                        .iter()
                        .map(|c| format!("({})", c.join(" ")))
                        .collect();
                    vec![
                        cycles,
                        o.m().to_string(),
                        o.n_bonds.to_string(),
                        format_rational(&o.amplitude),
                        o.length.to_string(),
                    ]
                })
                .collect();
            emit_csv(
                out,
                &["cycles", "m", "n_bonds", "amplitude", "length"],
                &rows,
            )
        }
    }
}

fn orbits(ctx: &Context, out: &mut dyn Write) -> Result<()> {
    let (_, _, e) = ctx.expansion()?;
    emit_orbits(ctx, &e, out)
}

fn parse_deletion(bonds: &BondDigraph, text: &str) -> Result<(VertexId, BondId)> {
    let (v, b) = text.split_once(':').ok_or_else(|| {
        Error::InvalidArgument(format!("deletion `{text}` is not of the form vertex:bond"))
    })?;
    let v: i64 = v
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad vertex id in `{text}`")))?;
    let b = bonds.parse_label(&b.replace('\u{0302}', "^"))?;
    Ok((VertexId(v), b))
}

fn reduce(ctx: &Context, delete: &[String], out: &mut dyn Write) -> Result<()> {
    let (bonds, sys) = ctx.system()?;
    let deletions: BTreeMap<VertexId, BondId> = if delete.is_empty() {
        default_deletions(&ctx.graph, &bonds)
    } else {
        let mut map = BTreeMap::new();
        for d in delete {
            let (v, b) = parse_deletion(&bonds, d)?;
            if map.insert(v, b).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} listed twice in --delete"
                )));
            }
        }
        map
    };
    let reduced = ghost_reduce(&ctx.graph, &bonds, &sys, &deletions)?;
    let ghosts: Vec<Value> = reduced
        .ghosts
        .iter()
        .map(|g| {
            json!({
                "label": g.label,
                "deleted": bonds.label(g.deleted),
                "vertex": g.vertex,
                "continuation": bonds.label(g.continuation),
            })
        })
        .collect();
    let deleted: Vec<Value> = deletions
        .iter()
        .map(|(v, b)| json!({"vertex": v, "bond": bonds.label(*b)}))
        .collect();
    let e = OrbitExpansion::new(reduced.digraph, ctx.options)?;
    if ctx.format == Format::Csv {
        return emit_orbits(ctx, &e, out);
    }
    let unit = ctx.unit();
    let mut value = json!({
        "deletions": deleted,
        "ghosts": ghosts,
        "orbits": e.orbits.iter().map(|o| orbit_json(&e, o, unit.as_ref())).collect::<Vec<_>>(),
    });
    if ctx.graph.exact_lengths().is_some() {
        let cond = e.condition()?;
        let full = OrbitExpansion::for_system(&sys, &bonds, ctx.options)?.condition()?;
        value["condition"] = condition_json(&cond, unit.as_ref());
        value["matches_unreduced"] = json!(cond == full);
    }
    emit_json(out, &value)
}

fn with_symbol(r: &Rational) -> String {
    if r.is_zero() {
        "0".into()
    } else {
        format!("{}ℓ", format_rational(r))
    }
}

fn effective(ctx: &Context, out: &mut dyn Write) -> Result<()> {
    let (_, sys) = ctx.system()?;
    let res = effective_size(&sys, &ctx.graph)?;
    let n_edges = Rational::from_integer((ctx.graph.n_edges() as i64).into());
    let eigenvalues: Vec<Value> = res
        .eigen
        .multiset()
        .iter()
        .map(|z| json!([z.re, z.im]))
        .collect();
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({
                "n_nonzero": res.n_nonzero,
                "n_zero": res.eigen.zero_multiplicity,
                "W": with_symbol(&res.w_in_edge_lengths),
                "W_absolute": res.w.to_string(),
                "vol": with_symbol(&n_edges),
                "vol_absolute": res.vol.to_string(),
                "is_weyl": res.is_weyl,
                "balanced_vertices": res.balanced_vertices,
                "eigenvalues": eigenvalues,
            }),
        ),
        Format::Csv => emit_csv(
            out,
            &["n_nonzero", "n_zero", "W", "vol", "is_weyl"],
            &[vec![
                res.n_nonzero.to_string(),
                res.eigen.zero_multiplicity.to_string(),
                res.w.to_string(),
                res.vol.to_string(),
                res.is_weyl.to_string(),
            ]],
        ),
    }
}

fn classify(ctx: &Context, out: &mut dyn Write) -> Result<()> {
    ctx.graph.ensure_valid()?;
    let c = classify_weyl(&ctx.graph);
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({
                "class": c.class,
                "is_weyl": c.is_weyl(),
                "balanced_vertices": c.witnesses,
                "vol": ctx.graph.volume().to_string(),
            }),
        ),
        Format::Csv => {
            let class = if c.is_weyl() { "weyl" } else { "non_weyl" };
            let witnesses: Vec<String> = c.witnesses.iter().map(ToString::to_string).collect();
            emit_csv(
                out,
                &["class", "is_weyl", "balanced_vertices"],
                &[vec![
                    class.into(),
                    c.is_weyl().to_string(),
                    witnesses.join(" "),
                ]],
            )
        }
    }
}

fn families(ctx: &Context) -> Result<Vec<ResonanceFamily>> {
    let base = ctx.base_length()?;
    let (_, _, e) = ctx.expansion()?;
    let red = reduce_with_base(&e.condition()?, Some(&base))?;
    find_roots(&red)
}

fn resonances(
    ctx: &Context,
    rmax: f64,
    svg_path: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Result<()> {
    if !(rmax > 0.0 && rmax.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "rmax must be positive, got {rmax}"
        )));
    }
    let fams = families(ctx)?;
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for (id, f) in fams.iter().enumerate() {
        for n in f.indices_in_disc(rmax) {
            let k = f.k(n);
            points.push((k, f.multiplicity, f.kind));
            rows.push((k, f.multiplicity, id, f.kind));
        }
    }
    rows.sort_by(|a, b| {
        (a.0.re, a.0.im, a.2)
            .partial_cmp(&(b.0.re, b.0.im, b.2))
            .expect("finite")
    });
    if let Some(path) = svg_path {
        std::fs::write(
            path,
            svg::scatter(&points, &format!("resonances with |k| ≤ {rmax}")),
        )?;
    }
    match ctx.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(k, m, id, kind)| {
                    vec![
                        format!("{:.12}", k.re),
                        format!("{:.12}", clean(k.im)),
                        m.to_string(),
                        id.to_string(),
                        kind.as_str().into(),
                    ]
                })
                .collect();
            emit_csv(
                out,
                &["re_k", "im_k", "multiplicity", "family_id", "type"],
                &rows,
            )
        }
        Format::Json => {
            let families: Vec<Value> = fams
                .iter()
                .enumerate()
                .map(|(id, f)| {
                    json!({
                        "family_id": id,
                        "z": [f.z_root.re, clean(f.z_root.im)],
                        "z_exact": f.exact_root.as_ref().map(format_rational),
                        "multiplicity": f.multiplicity,
                        "type": f.kind,
                        "k_formula": k_formula(f),
                    })
                })
                .collect();
            let resonances: Vec<Value> = rows
                .iter()
                .map(|(k, m, id, kind)| {
                    json!({"re_k": k.re, "im_k": clean(k.im), "multiplicity": m, "family_id": id, "type": kind})
                })
                .collect();
            emit_json(
                out,
                &json!({"families": families, "resonances": resonances}),
            )
        }
    }
}

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

fn k_formula(f: &ResonanceFamily) -> String {
    let theta = f.z_root.arg();
    let lm = f.z_root.norm().ln();
    let im = if f.kind == crate::resonance::FamilyKind::Eigenvalue || lm == 0.0 {
        String::new()
    } else {
        format!(" − i·({lm:.12})")
    };
    format!("({:.12} + 2πn{im})/{}", theta, f.base_length)
}

fn count(ctx: &Context, rmax: f64, steps: usize, numeric: bool, out: &mut dyn Write) -> Result<()> {
    let est: CountingEstimate = if numeric || ctx.graph.exact_lengths().is_none() {
        numeric_counting(&ctx.graph, rmax, steps, ctx.options)?
    } else {
        count_resonances(&families(ctx)?, rmax, steps)?
    };
    let summary = json!({
        "fitted_slope": est.fitted_slope,
        "predicted_slope": est.predicted_slope,
        "W": est.w,
        "numeric_only": est.numeric_only,
    });
    match ctx.format {
        Format::Json => emit_json(
            out,
            &serde_json::to_value(&est).expect("estimate serializes"),
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = est
                .radii
                .iter()
                .zip(&est.counts)
                .map(|(r, c)| vec![format!("{r}"), c.to_string()])
                .collect();
            emit_csv(out, &["radius", "count"], &rows)?;
            writeln!(out, "# {summary}")?;
            Ok(())
        }
    }
}

fn parse_k(text: &str) -> Result<Complex64> {
    let bad = || Error::InvalidArgument(format!("wavenumber `{text}` is not of the form re,im"));
    let (re, im) = text.split_once(',').ok_or_else(bad)?;
    let parse = |s: &str| -> Result<f64> {
        let s = s.trim();
        if let Some(m) = s.strip_suffix("pi") {
            let m = m.trim_end_matches('*');
            let f = if m.is_empty() {
                1.0
            } else if m == "-" {
                -1.0
            } else {
                m.parse().map_err(|_| bad())?
            };
            Ok(f * PI)
        } else {
            s.parse().map_err(|_| bad())
        }
    };
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

fn evaluate(ctx: &Context, ks: &[String], out: &mut dyn Write) -> Result<()> {
    let (_, sys) = ctx.system()?;
    let ks = ks.iter().map(|k| parse_k(k)).collect::<Result<Vec<_>>>()?;
    let values: Vec<(Complex64, Complex64)> = ks
        .iter()
        .map(|&k| (k, crate::resonance::evaluate_condition(&sys, k)))
        .collect();
    match ctx.format {
        Format::Json => emit_json(
            out,
            &Value::Array(
                values
                    .iter()
                    .map(
                        |(k, v)| json!({"k": [k.re, k.im], "value": [v.re, v.im], "abs": v.norm()}),
                    )
                    .collect(),
            ),
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .map(|(k, v)| {
                    vec![
                        k.re.to_string(),
                        k.im.to_string(),
                        v.re.to_string(),
                        v.im.to_string(),
                    ]
                })
                .collect();
            emit_csv(out, &["re_k", "im_k", "re", "im"], &rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavenumber_parsing() {
        assert_eq!(parse_k("1.5,-2").unwrap(), Complex64::new(1.5, -2.0));
        assert!((parse_k("pi,0").unwrap().re - PI).abs() < 1e-15);
        assert!((parse_k("2*pi,-0.5").unwrap().re - 2.0 * PI).abs() < 1e-15);
        assert!(parse_k("1").is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("x"), "x");
    }
}
