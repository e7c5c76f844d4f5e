//! Command-line front end: `catalog`, `phase-diagram`, `potential`, `partner`, `verify`.
//!
//! Tabular results go out as CSV with 12 significant digits; nested reports as
//! JSON. Exit status is 0 on success, 1 when a verification fails and 2 for
//! bad input.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::charexp::{enumerate_solutions, SeedSolution, SequenceTag, SolType};
use crate::liouville::{self, PotentialProfile};
use crate::params::{canonicalize, PotentialSpec, RawParams};
use crate::regions::{self, Area};
use crate::seedsol::SeedWavefunction;
use crate::susy::{self, IsoReport};
use crate::verify::{self, Family, FamilyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "jseed", version, about = "Seed solutions, phase diagrams and Darboux partners of rational potentials")]
pub struct Cli {
    /// JSON file with the potential parameters {"a2", "c0", "c1", "lambda0", "mu0"}
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// worker threads (all cores when absent)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub params: ParamFlags,
    #[command(subcommand)]
    pub command: Command,
}

/// Parameters given inline; they override the config file field by field.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamFlags {
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a2: Option<f64>,
    #[arg(long, global = true)]
    pub c0: Option<f64>,
    #[arg(long, global = true)]
    pub c1: Option<f64>,
    #[arg(long = "l0", global = true)]
    pub lambda0: Option<f64>,
    #[arg(long = "m0", global = true)]
    pub mu0: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Seed solutions for orders 0..=m-max
    Catalog {
        #[arg(long, default_value_t = 3)]
        m_max: u32,
        /// append Phi(z) sampled at interior points
        #[arg(long)]
        emit_wavefunctions: bool,
        #[arg(long, default_value_t = 9)]
        samples: usize,
    },
    /// Areas, separatrices and solution presence over a (lambda0, mu0) grid
    PhaseDiagram {
        #[arg(long)]
        m: u32,
        /// a:b:n
        #[arg(long)]
        lambda0: String,
        /// a:b:n
        #[arg(long)]
        mu0: String,
    },
    /// Potential on a uniform x grid
    Potential {
        #[arg(long, allow_hyphen_values = true, default_value_t = -10.0)]
        xmin: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 10.0)]
        xmax: f64,
        #[arg(long, default_value_t = 401)]
        n: usize,
    },
    /// Darboux partner for a chain of factorization functions
    Partner {
        /// type:m[,type:m...]
        #[arg(long)]
        ff: String,
        #[arg(long, default_value_t = 401)]
        n: usize,
        /// JSON spectrum comparison (stderr when absent)
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Closed forms against the generic solver
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 200)]
        draws: usize,
    },
}

/// Input problems: reported with exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct BadConfig(pub String);

fn bad(msg: impl Into<String>) -> anyhow::Error {
    BadConfig(msg.into()).into()
}

/// Parse `a:b:n` into `n` evenly spaced values.
pub fn parse_range(s: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad(format!("range '{s}' is not a:b:n")));
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad(format!("bad range start in '{s}'")))?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad(format!("bad range end in '{s}'")))?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad(format!("bad point count in '{s}'")))?;
    if n == 0 || !a.is_finite() || !b.is_finite() || b < a || (n > 1 && a == b) {
        return Err(bad(format!("empty range '{s}'")));
    }
    Ok(liouville::uniform_grid(a, b, n))
}

/// `type:m` list.
pub fn parse_ff_list(s: &str) -> anyhow::Result<Vec<(SolType, u32)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (t, m) = p.trim().split_once(':').ok_or_else(|| bad(format!("factorization '{p}' is not type:m")))?;
            let mut chars = t.chars();
            let ty = match (chars.next(), chars.next()) {
                (Some(c), None) => SolType::from_letter(c),
                _ => None,
            }
            .ok_or_else(|| bad(format!("unknown solution type '{t}'")))?;
            let m = m.parse().map_err(|_| bad(format!("bad order in '{p}'")))?;
            Ok((ty, m))
        })
        .collect::<anyhow::Result<Vec<_>>>()
        .and_then(|v| if v.is_empty() { Err(bad("empty factorization list")) } else { Ok(v) })
}

/// Number with 12 significant digits in its shortest form.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap();
    // avoid "-0"
    if r == 0.0 {
        "0".into()
    } else if r.abs() < 1e-5 || r.abs() >= 1e15 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

/// Header plus rows as CSV bytes.
pub fn emit_csv(header: &[String], rows: &[Vec<String>]) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        if r.len() != header.len() {
            anyhow::bail!("row has {} fields, header has {}", r.len(), header.len());
        }
        w.write_record(r)?;
    }
    Ok(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Read the config file, apply inline overrides and canonicalize.
pub fn load_spec(config: Option<&Path>, flags: &ParamFlags) -> anyhow::Result<PotentialSpec> {
    let mut raw: serde_json::Value = match config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| bad(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", p.display())))?
        }
        None => serde_json::json!({}),
    };
    let obj = raw.as_object_mut().ok_or_else(|| bad("config must be a JSON object"))?;
    for (k, v) in [("a2", flags.a2), ("c0", flags.c0), ("c1", flags.c1), ("lambda0", flags.lambda0), ("mu0", flags.mu0)] {
        if let Some(v) = v {
            obj.insert(k.into(), v.into());
        }
    }
    let raw: RawParams = serde_json::from_value(raw).map_err(|e| bad(format!("parameters: {e}")))?;
    canonicalize(&raw).map_err(|e| bad(format!("parameters: {e}")))
}

/// Catalog rows, sorted by order, type, then `lam1`.
pub fn catalog_csv(spec: &PotentialSpec, m_max: u32, samples: Option<usize>) -> anyhow::Result<Vec<u8>> {
    let mut sols: Vec<SeedSolution> = (0..=m_max).into_par_iter().flat_map_iter(|m| enumerate_solutions(spec, m)).collect();
    sols.sort_by(|a, b| (a.m, a.sol_type).cmp(&(b.m, b.sol_type)).then(a.lam1.total_cmp(&b.lam1)));
    let mut header = strings(&["m", "type", "tag", "lam0", "lam1", "mu_signed", "eps", "nodeless", "route"]);
    let zs: Vec<f64> = match samples {
        Some(k) => (1..=k).map(|i| i as f64 / (k + 1) as f64).collect(),
        None => Vec::new(),
    };
    header.extend(zs.iter().map(|z| format!("phi_z{}", fmt_num(*z))));
    let rows: Vec<Vec<String>> = sols
        .iter()
        .map(|s| {
            let tag = match s.tag {
                SequenceTag::Primary => "primary",
                SequenceTag::Secondary => "secondary",
            };
            let mut r = vec![
                s.m.to_string(),
                s.sol_type.letter().to_string(),
                tag.to_string(),
                fmt_num(s.lam0),
                fmt_num(s.lam1),
                fmt_num(s.mu_signed),
                fmt_num(s.eps),
                s.nodeless.to_string(),
                s.route.to_string(),
            ];
            let wf = SeedWavefunction::new(spec, s);
            r.extend(zs.iter().map(|&z| fmt_num(wf.value(z).unwrap_or(f64::NAN))));
            r
        })
        .collect();
    emit_csv(&header, &rows)
}

/// One row per grid point, ordered by `lambda0` then `mu0`.
pub fn phase_diagram_csv(spec: &PotentialSpec, m: u32, lambda0: &[f64], mu0: &[f64]) -> anyhow::Result<Vec<u8>> {
    let points: Vec<(usize, f64, f64)> =
        lambda0.iter().flat_map(|&l| mu0.iter().map(move |&u| (l, u))).enumerate().map(|(i, (l, u))| (i, l, u)).collect();
    let mut header = strings(&[
        "point", "lambda0", "mu0", "area", "boundary", "on_a_line", "on_b_line", "on_c_line", "a_line", "b_line", "c_line",
        "threshold_a", "threshold_b", "ad_mu", "bd_mu",
    ]);
    for t in ['a', 'b', 'c', 'd'] {
        header.push(format!("present_{t}"));
        header.push(format!("nodeless_{t}"));
    }
    let rows: Vec<Vec<String>> = points
        .par_iter()
        .map(|&(i, l, u)| -> anyhow::Result<Vec<String>> {
            let s = spec.with_rays(l, u).map_err(|e| bad(format!("point ({l}, {u}): {e}")))?;
            let rep = regions::region_report(&s, m);
            let sep = rep.separatrices;
            let on = |line: Option<f64>| line.is_some_and(|x| (x - u).abs() <= regions::AREA_TOL).to_string();
            let mut r = vec![
                i.to_string(),
                fmt_num(l),
                fmt_num(u),
                area_name(rep.area).into(),
                rep.boundary.to_string(),
                on(Some(sep.a_line)),
                on(sep.b_line),
                on(sep.c_line),
                fmt_num(sep.a_line),
                fmt_opt(sep.b_line),
                fmt_opt(sep.c_line),
                fmt_opt(rep.threshold_a),
                fmt_opt(rep.threshold_b),
                fmt_opt(rep.ad_mu),
                fmt_opt(rep.bd_mu),
            ];
            let sols = enumerate_solutions(&s, m);
            for t in [SolType::A, SolType::B, SolType::C, SolType::D] {
                let of: Vec<_> = sols.iter().filter(|x| x.sol_type == t).collect();
                r.push(of.len().to_string());
                r.push(of.iter().filter(|x| x.nodeless.is_nodeless()).count().to_string());
            }
            Ok(r)
        })
        .collect::<anyhow::Result<_>>()?;
    emit_csv(&header, &rows)
}

fn area_name(a: Area) -> &'static str {
    match a {
        Area::A => "A",
        Area::B => "B",
        Area::C => "C",
        Area::D => "D",
    }
}

pub fn potential_csv(spec: &PotentialSpec, xmin: f64, xmax: f64, n: usize) -> anyhow::Result<Vec<u8>> {
    if n == 0 || !(xmax > xmin) {
        return Err(bad("empty x grid"));
    }
    let p = PotentialProfile::uniform(spec, xmin, xmax, n)?;
    let rows: Vec<Vec<String>> = (0..n).map(|i| vec![fmt_num(p.x_samples[i]), fmt_num(p.z_samples[i]), fmt_num(p.v_samples[i])]).collect();
    emit_csv(&strings(&["x", "z", "V"]), &rows)
}

/// Pick the factorization function for `type:m`: nodeless, primary first, lowest energy next.
pub fn select_ff(spec: &PotentialSpec, ty: SolType, m: u32) -> anyhow::Result<SeedSolution> {
    let mut c: Vec<SeedSolution> =
        enumerate_solutions(spec, m).into_iter().filter(|s| s.sol_type == ty && s.nodeless.is_nodeless()).collect();
    c.sort_by(|a, b| {
        let key = |s: &SeedSolution| if s.tag == SequenceTag::Primary { 0 } else { 1 };
        key(a).cmp(&key(b)).then(a.eps.total_cmp(&b.eps))
    });
    c.into_iter().next().ok_or_else(|| bad(format!("no nodeless {}-type solution at m = {m}", ty.letter())))
}

#[derive(Debug, Serialize)]
pub struct PartnerReport {
    pub spec: RawParams,
    pub ff_chain: Vec<SeedSolution>,
    pub expected_change: Vec<susy::ExpectedChange>,
    pub base_spectrum: Vec<f64>,
    pub partner_spectrum: Vec<f64>,
    pub comparison: IsoReport,
}

/// Partner CSV and the spectrum comparison.
pub fn partner_outputs(spec: &PotentialSpec, ff: &str, n: usize) -> anyhow::Result<(Vec<u8>, PartnerReport)> {
    let chain = parse_ff_list(ff)?.into_iter().map(|(t, m)| select_ff(spec, t, m)).collect::<anyhow::Result<Vec<_>>>()?;
    let pr = susy::partner_result(spec, &chain, n).map_err(|e| match e {
        crate::Error::RepeatedEnergy | crate::Error::NodeDetected(_) | crate::Error::WronskianNode(_) => bad(e.to_string()),
        e => anyhow::Error::from(e),
    })?;
    let rows: Vec<Vec<String>> = (0..pr.base_profile.x.len())
        .map(|i| vec![fmt_num(pr.base_profile.x[i]), fmt_num(pr.base_profile.v[i]), fmt_num(pr.partner_profile.v[i])])
        .collect();
    let csv = emit_csv(&strings(&["x", "V", "V_partner"]), &rows)?;
    let comparison = susy::isospectral_report(&pr);
    Ok((
        csv,
        PartnerReport {
            spec: spec.to_raw(),
            ff_chain: pr.ff_chain,
            expected_change: pr.expected_change,
            base_spectrum: pr.base_spectrum,
            partner_spectrum: pr.partner_spectrum,
            comparison,
        },
    ))
}

pub fn verify_report(family: &str, seed: u64, draws: usize) -> anyhow::Result<FamilyReport> {
    let f: Family = family.parse().map_err(bad)?;
    if draws == 0 {
        return Err(bad("draws must be positive"));
    }
    Ok(verify::run_family(f, seed, draws)?)
}

fn write_out(out: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> anyhow::Result<()> {
    match out {
        Some(p) => File::create(p).and_then(|mut f| f.write_all(bytes)).with_context(|| format!("writing {}", p.display())),
        None => stdout.write_all(bytes).context("writing stdout"),
    }
}

fn json_bytes<T: Serialize>(v: &T) -> anyhow::Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

/// Run a parsed command line; returns the exit status.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match run_inner(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            if e.downcast_ref::<BadConfig>().is_some() {
                EXIT_CONFIG
            } else {
                EXIT_VERIFY
            }
        }
    }
}

fn run_inner(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<i32> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(bad("--threads must be positive"));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let out = cli.out.as_deref();
    let spec = || load_spec(cli.config.as_deref(), &cli.params);
    match &cli.command {
        Command::Catalog { m_max, emit_wavefunctions, samples } => {
            let s = spec()?;
            let k = emit_wavefunctions.then_some(*samples);
            if k == Some(0) {
                return Err(bad("--samples must be positive"));
            }
            write_out(out, &catalog_csv(&s, *m_max, k)?, stdout)?;
        }
        Command::PhaseDiagram { m, lambda0, mu0 } => {
            let s = spec()?;
            let l = parse_range(lambda0)?;
            let u = parse_range(mu0)?;
            if l.iter().any(|&x| x < 0.0) || u.iter().any(|&x| x <= 0.0) {
                return Err(bad("lambda0 must be non-negative and mu0 positive"));
            }
            write_out(out, &phase_diagram_csv(&s, *m, &l, &u)?, stdout)?;
        }
        Command::Potential { xmin, xmax, n } => {
            let s = spec()?;
            write_out(out, &potential_csv(&s, *xmin, *xmax, *n)?, stdout)?;
        }
        Command::Partner { ff, n, report } => {
            let s = spec()?;
            if *n < 2 {
                return Err(bad("--n must be at least 2"));
            }
            let (csv, rep) = partner_outputs(&s, ff, *n)?;
            write_out(out, &csv, stdout)?;
            let js = json_bytes(&rep)?;
            match report {
                Some(p) => write_out(Some(p), &js, stdout)?,
                None => stderr.write_all(&js)?,
            }
            if !rep.comparison.pass {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Verify { family, draws } => {
            let rep = verify_report(family, cli.seed, *draws)?;
            write_out(out, &json_bytes(&rep)?, stdout)?;
            if !rep.pass {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parse arguments and run; clap usage errors map to exit status 2.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = write!(stderr, "{}", e.render());
            if !e.use_stderr() {
                let _ = write!(stdout, "{}", e.render());
            }
            code
        }
    }
}

pub fn main_from_env() -> i32 {
    main_with(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> PotentialSpec {
        PotentialSpec::new(0.0, 0.25, 0.0, 8.0).unwrap()
    }

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = main_with(std::iter::once("jseed").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(-22.0), "-22");
        assert_eq!(fmt_num(10.0 / 3.0), "3.33333333333");
        assert_eq!(fmt_num(-196.0 / 9.0), "-21.7777777778");
        assert_eq!(fmt_num(1.5e-20), "1.5e-20");
        assert_eq!(fmt_num(-4.946768648041e-7), "-4.94676864804e-7");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(f64::NAN), "nan");
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_range("2:2:1").unwrap(), vec![2.0]);
        for s in ["0:1:0", "1:0:4", "0:1", "a:1:2", "3:3:2"] {
            assert!(parse_range(s).unwrap_err().downcast_ref::<BadConfig>().is_some(), "{s}");
        }
    }

    #[test]
    fn ff_lists() {
        assert_eq!(parse_ff_list("b:1, d:0").unwrap(), vec![(SolType::B, 1), (SolType::D, 0)]);
        assert!(parse_ff_list("").is_err());
        assert!(parse_ff_list("x:1").is_err());
        assert!(parse_ff_list("ab:1").is_err());
        assert!(parse_ff_list("a").is_err());
    }

    #[test]
    fn e1_catalog_has_sixteen_rows() {
        let bytes = catalog_csv(&e1(), 3, None).unwrap();
        let mut rdr = csv::Reader::from_reader(bytes.as_slice());
        let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
        assert_eq!(header, strings(&["m", "type", "tag", "lam0", "lam1", "mu_signed", "eps", "nodeless", "route"]));
        let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 16);
        let m1b = rows.iter().find(|r| &r[0] == "1" && &r[1] == "b").unwrap();
        assert_eq!(m1b[4].parse::<f64>().unwrap(), 10.0);
        assert_eq!(m1b[6].parse::<f64>().unwrap(), -100.0);
        assert_eq!(&m1b[7], "yes");
    }

    #[test]
    fn wavefunction_columns() {
        let bytes = catalog_csv(&e1(), 0, Some(3)).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.lines().next().unwrap().ends_with("phi_z0.25,phi_z0.5,phi_z0.75"));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn csv_round_trip_and_repeatability() {
        let a = phase_diagram_csv(&e1(), 1, &parse_range("0:4:5").unwrap(), &parse_range("1:9:5").unwrap()).unwrap();
        let b = phase_diagram_csv(&e1(), 1, &parse_range("0:4:5").unwrap(), &parse_range("1:9:5").unwrap()).unwrap();
        assert_eq!(a, b);
        let mut rdr = csv::Reader::from_reader(a.as_slice());
        let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 25);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r[0].parse::<usize>().unwrap(), i);
        }
        // lambda0 = 0, mu0 = 3 sits on the A line for m = 1
        let on = rows.iter().find(|r| &r[1] == "0" && &r[2] == "3").unwrap();
        assert_eq!(&on[4], "true");
        assert_eq!(&on[5], "true");
        assert!(emit_csv(&strings(&["a", "b"]), &[vec!["1".into()]]).is_err());
    }

    #[test]
    fn potential_rows() {
        let (code, out, _) = run_args(&["potential", "--a2", "0", "--c0", "0.25", "--m0", "8", "--xmin", "-2", "--xmax", "2", "--n", "5"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "x,z,V");
        assert_eq!(lines.len(), 6);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["phase-diagram", "--a2", "0", "--c0", "0.25", "--m0", "8", "--m", "1", "--lambda0", "1:0:3", "--mu0", "1:2:2"]).0, 2);
        assert_eq!(run_args(&["catalog", "--a2", "0", "--m0", "8"]).0, 2);
        assert_eq!(run_args(&["catalog", "--a2", "0", "--c0", "-1", "--m0", "8"]).0, 2);
        assert_eq!(run_args(&["verify", "--family", "nope"]).0, 2);
        assert_eq!(run_args(&["bogus"]).0, 2);
        assert_eq!(run_args(&["partner", "--a2", "0", "--c0", "0.25", "--m0", "8", "--ff", "c:1"]).0, 2);
    }

    #[test]
    fn verify_ltp_passes() {
        let (code, out, err) = run_args(&["verify", "--family", "ltp", "--draws", "100", "--seed", "11"]);
        assert_eq!(code, 0, "{err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["family"], "ltp");
    }

    #[test]
    fn config_file_and_override() {
        let dir = std::env::temp_dir().join(format!("jseed-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("e1.json");
        std::fs::write(&p, r#"{"a2": 0, "c0": 0.5, "c1": 2, "lambda0": 0, "mu0": 8}"#).unwrap();
        let s = load_spec(Some(&p), &ParamFlags::default()).unwrap();
        assert_eq!(s, e1());
        let o = load_spec(Some(&p), &ParamFlags { mu0: Some(5.0), ..Default::default() }).unwrap();
        assert_eq!(o.mu0(), 5.0);
        std::fs::write(&p, "[1, 2]").unwrap();
        assert!(load_spec(Some(&p), &ParamFlags::default()).unwrap_err().downcast_ref::<BadConfig>().is_some());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn partner_command_outputs() {
        let (csv, rep) = partner_outputs(&e1(), "b:1", 21).unwrap();
        assert!(rep.comparison.pass);
        assert_eq!(rep.partner_spectrum.len(), 4);
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 22);
    }
}
