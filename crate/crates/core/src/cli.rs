//! Command-line front end. Every subcommand is deterministic given its flags
//! and `--seed`; numeric CSV fields carry 17 significant digits.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::channel::example2;
use crate::channel::{simulate_wiretap, ChannelParams, Detector};
use crate::code::parse_bits;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeSpec};
use crate::rational;
use crate::theta::extremal::{extremal_kissing, extremal_theta};
use crate::theta::secrecy::{self, secrecy_gain, WeakGain};
use crate::theta::series::{ClosedForm, ThetaSource};
use crate::theta::jacobi;
use crate::wiretap::{build_coset_code, Chain, MultilevelCode, MultilevelConfig};
use crate::{catalog, wiretap};

/// Dimensions with a known extremal even unimodular lattice.
pub const EXTREMAL_DIMS: [usize; 6] = [8, 24, 32, 48, 72, 80];

const AFTER_HELP: &str = "\
Output formats:
  curve     CSV  y_db, xi, theta_lattice, theta_cubic
  bound     CSV  n, bound_exact, bound_theta3, bound_1086, extremal_gain
  simulate  JSON {config, p_bob, p_eve, stderr_bob, stderr_eve, theta_bound_eve, trials, seed}
            CSV  (--sweep) snr_db, p_eve_mc, p_eve_closed, p_eve_bound
  encode    JSON {point, frame_scale2, coset_labels_per_level}
Errors: usage problems exit with 2; failed computations exit with 1 and
print {\"error\": ...} on stderr. JSON schemas live in the crate's schemas/ directory.";

#[derive(Parser, Debug)]
#[command(name = "wiretap", version, about = "Lattice coset coding for the Gaussian wiretap channel", after_help = AFTER_HELP)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format (each subcommand has a natural default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weak and strong secrecy gains of a lattice, a closed form (Leech) or
    /// the extremal theta series of a dimension.
    Gain {
        /// Catalog name, `Leech`, a dimension (multiple of 8) or a lattice JSON file.
        target: String,
    },
    /// Secrecy function on a dB grid of y.
    Curve {
        target: String,
        #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
        y_min_db: f64,
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        y_max_db: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Extremal theta series as a polynomial in E4 and Delta.
    Extremal { n: usize },
    /// Siegel–Weil lower bound on the secrecy gain.
    Bound {
        #[arg(long, default_value_t = 8)]
        n_min: usize,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        n_step: usize,
    },
    /// Multilevel encoding of hex-coded bits (each digit most significant bit first).
    Encode {
        #[arg(long, value_parser = ["e8", "z8"])]
        chain: String,
        #[arg(long)]
        bits: String,
        /// Use only the first this many bits of the hex string.
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        center: bool,
        #[arg(long)]
        voronoi: bool,
    },
    /// Multistage decoding of a received 8-dimensional vector.
    Decode {
        #[arg(long, value_parser = ["e8", "z8"])]
        chain: String,
        /// Number of data bits.
        #[arg(long)]
        length: usize,
        /// Comma-separated received coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        center: bool,
    },
    /// Monte Carlo estimate of Bob's and Eve's correct-coset probabilities.
    Simulate {
        #[arg(long, default_value = "Z2")]
        fine: String,
        #[arg(long, default_value = "2Z2")]
        coarse: String,
        #[arg(long, default_value_t = 0.2)]
        sigma_b: f64,
        #[arg(long, default_value_t = 0.8)]
        sigma_e: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = DetectorArg::Lattice)]
        detector: DetectorArg,
        /// Half-width of the coordinate box for the random coarse point.
        #[arg(long, default_value_t = wiretap::coset_code::DEFAULT_OFFSET_RANGE)]
        offset_range: i64,
        /// Sweep E_b/N_0 over `lo:hi:step` dB for the Z^2/2Z^2 example.
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
    },
    /// List catalog lattices and the nested code chain.
    Catalog,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DetectorArg {
    Lattice,
    Constellation,
}

/// Parse `args` (program name first) and run, writing to stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let written = match &cli.common.out {
                Some(path) => std::fs::write(path, text.as_bytes()).map_err(Error::from),
                None => out.write_all(text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => 0,
                Err(e) => report(err, &e),
            }
        }
        Err(e) => report(err, &e),
    }
}

fn report(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "{}", json!({ "error": e.to_string() }));
    1
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn execute(cli: &Cli) -> Result<String> {
    let fmt = cli.common.format;
    match &cli.command {
        Command::Gain { target } => gain(target, fmt),
        Command::Curve { target, y_min_db, y_max_db, points } => curve(target, *y_min_db, *y_max_db, *points, fmt),
        Command::Extremal { n } => extremal(*n, fmt),
        Command::Bound { n_min, n_max, n_step } => bound(*n_min, *n_max, *n_step, fmt),
        Command::Encode { chain, bits, length, center, voronoi } => {
            encode(chain, bits, *length, MultilevelConfig { centering: *center, voronoi_reduce: *voronoi })
        }
        Command::Decode { chain, length, point, center } => decode(chain, *length, point, *center, fmt),
        Command::Simulate { fine, coarse, sigma_b, sigma_e, trials, detector, offset_range, sweep } => {
            let detector = match detector {
                DetectorArg::Lattice => Detector::Lattice,
                DetectorArg::Constellation => Detector::Constellation,
            };
            match sweep {
                Some(spec) => sweep_example2(spec, *trials, cli.common.seed, fmt),
                None => simulate(fine, coarse, *sigma_b, *sigma_e, *trials, cli.common.seed, detector, *offset_range),
            }
        }
        Command::Catalog => catalog_listing(fmt),
    }
}

/// Resolve a lattice name or JSON file path.
pub fn resolve_lattice(target: &str) -> Result<Lattice> {
    if target.ends_with(".json") {
        let text = std::fs::read_to_string(target)?;
        let spec: LatticeSpec = serde_json::from_str(&text)?;
        return Lattice::from_spec(&spec);
    }
    catalog::lookup(target)
}

/// Resolve a gain/curve target to a theta source and its display name.
pub fn resolve_source(target: &str) -> Result<(String, ThetaSource)> {
    if let Ok(n) = target.parse::<usize>() {
        return Ok((format!("extremal-{n}"), ThetaSource::Polynomial(extremal_theta(n)?)));
    }
    if matches!(target, "Leech" | "L24" | "Lambda24") {
        return Ok(("Leech".into(), ThetaSource::Closed(ClosedForm::Leech)));
    }
    let lattice = resolve_lattice(target)?;
    Ok((lattice.display_name(), ThetaSource::from_lattice(lattice)?))
}

fn gain(target: &str, fmt: Option<Format>) -> Result<String> {
    let (name, source) = resolve_source(target)?;
    let g = secrecy_gain(&name, &source)?;
    if fmt == Some(Format::Json) {
        let v = json!({
            "target": name,
            "weak": g.weak.as_ref().map(WeakGain::display),
            "weak_value": g.weak.as_ref().map(WeakGain::value),
            "weak_exact": g.weak.as_ref().is_some_and(|w| w.exact().is_some()),
            "strong": g.strong.chi,
            "y_star": g.strong.y_star,
            "y_star_db": wiretap::rate::to_db(g.strong.y_star),
            "fallback": g.strong.fallback,
            "symmetry_point": g.symmetry_point,
            "conjecture_gap": g.conjecture_gap,
        });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v)?));
    }
    let weak = g.weak.as_ref().map(WeakGain::display).unwrap_or_else(|| "n/a".into());
    let mut s = format!("{weak}\n");
    s.push_str(&format!(
        "strong {} at y = {} ({:.4} dB){}\n",
        num(g.strong.chi),
        num(g.strong.y_star),
        wiretap::rate::to_db(g.strong.y_star),
        if g.strong.fallback { " [grid fallback]" } else { "" }
    ));
    Ok(s)
}

fn curve(target: &str, lo: f64, hi: f64, points: usize, fmt: Option<Format>) -> Result<String> {
    if points < 2 || !(hi > lo) {
        return Err(Error::InvalidArgument("need at least two points and y_max_db > y_min_db".into()));
    }
    let (_, source) = resolve_source(target)?;
    let n = source.dim() as f64;
    let lambda2 = source.volume().powf(2.0 / n);
    let rows = (0..points)
        .into_par_iter()
        .map(|i| {
            let db = lo + (hi - lo) * i as f64 / (points - 1) as f64;
            let y = 10f64.powf(db / 10.0);
            let ln_l = source.ln_eval(y)?;
            let ln_c = n * jacobi::ln_theta3(lambda2 * y);
            Ok((db, (ln_c - ln_l).exp(), ln_l.exp(), ln_c.exp()))
        })
        .collect::<Result<Vec<_>>>()?;
    if fmt == Some(Format::Json) {
        let v: Vec<Value> = rows
            .iter()
            .map(|r| json!({"y_db": r.0, "xi": r.1, "theta_lattice": r.2, "theta_cubic": r.3}))
            .collect();
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v)?));
    }
    let mut s = String::from("y_db,xi,theta_lattice,theta_cubic\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{}\n", num(r.0), num(r.1), num(r.2), num(r.3)));
    }
    Ok(s)
}

fn extremal(n: usize, fmt: Option<Format>) -> Result<String> {
    let p = extremal_theta(n)?;
    let (norm, kissing) = extremal_kissing(n)?;
    let gain = rational::format_rational(&p.weak_gain());
    if fmt == Some(Format::Json) {
        let v = json!({
            "polynomial": p.to_spec(),
            "formula": p.formula(),
            "min_norm": norm,
            "kissing": rational::format_rational(&kissing),
            "weak_gain": gain,
        });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v)?));
    }
    Ok(format!(
        "{}\nkissing {} at squared norm {}\ngain {}\n",
        p.formula(),
        rational::format_rational(&kissing),
        norm,
        gain
    ))
}

fn bound(n_min: usize, n_max: usize, step: usize, fmt: Option<Format>) -> Result<String> {
    if step == 0 || n_min < 8 || n_min > n_max {
        return Err(Error::InvalidArgument("need 8 <= n_min <= n_max and n_step > 0".into()));
    }
    let mut rows = Vec::new();
    for n in (n_min..=n_max).step_by(step) {
        let exact = secrecy::secrecy_gain_lower_bound(n)?;
        let extremal_gain = if EXTREMAL_DIMS.contains(&n) {
            Some(rational::to_f64(&extremal_theta(n)?.weak_gain()))
        } else {
            None
        };
        rows.push((n, exact, secrecy::lower_bound_asymptotic(n), secrecy::lower_bound_rounded(n), extremal_gain));
    }
    if fmt == Some(Format::Json) {
        let v: Vec<Value> = rows
            .iter()
            .map(|r| json!({"n": r.0, "bound_exact": r.1, "bound_theta3": r.2, "bound_1086": r.3, "extremal_gain": r.4}))
            .collect();
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v)?));
    }
    let mut s = String::from("n,bound_exact,bound_theta3,bound_1086,extremal_gain\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{},{}\n", r.0, num(r.1), num(r.2), num(r.3), r.4.map(num).unwrap_or_default()));
    }
    Ok(s)
}

/// Hex digits to bits, most significant bit of each digit first.
pub fn hex_to_bits(hex: &str) -> Result<Vec<u8>> {
    let mut bits = Vec::with_capacity(4 * hex.len());
    for ch in hex.trim_start_matches("0x").chars() {
        let d = ch.to_digit(16).ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?}")))?;
        bits.extend((0..4).rev().map(|i| ((d >> i) & 1) as u8));
    }
    if bits.is_empty() {
        return Err(Error::Parse("empty bit string".into()));
    }
    Ok(bits)
}

fn encode(chain: &str, hex: &str, length: Option<usize>, config: MultilevelConfig) -> Result<String> {
    let mut bits = hex_to_bits(hex)?;
    if let Some(l) = length {
        if l == 0 || l > bits.len() {
            return Err(Error::BitLength { expected: bits.len(), got: l });
        }
        bits.truncate(l);
    }
    let code = MultilevelCode::new(Chain::parse(chain)?, bits.len(), config)?;
    let p = code.encode(&bits)?;
    let labels = code.coset_labels_per_level(&p)?;
    let mut v = json!({
        "point": p.point,
        "frame_scale2": p.frame_scale2,
        "coset_labels_per_level": labels,
    });
    if config.centering {
        v["center"] = json!(code.center());
        v["transmitted"] = json!(code.transmit(&bits)?);
    }
    Ok(format!("{}\n", serde_json::to_string_pretty(&v)?))
}

fn decode(chain: &str, length: usize, point: &str, center: bool, fmt: Option<Format>) -> Result<String> {
    let y = point
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("invalid coordinate {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let code = MultilevelCode::new(Chain::parse(chain)?, length, MultilevelConfig { centering: center, voronoi_reduce: false })?;
    let bits = code.decode(&y)?;
    let text: String = bits.iter().map(|b| char::from(b'0' + b)).collect();
    if fmt == Some(Format::Json) {
        return Ok(format!("{}\n", json!({ "bits": text })));
    }
    // Round-trip through the bit parser keeps the two forms consistent.
    debug_assert_eq!(parse_bits(&text).ok(), Some(bits));
    Ok(format!("{text}\n"))
}

#[allow(clippy::too_many_arguments)]
fn simulate(fine: &str, coarse: &str, sigma_b: f64, sigma_e: f64, trials: u64, seed: u64, detector: Detector, range: i64) -> Result<String> {
    let code = build_coset_code(&resolve_lattice(fine)?, &resolve_lattice(coarse)?)?.with_offset_range(range);
    let params = ChannelParams::new(sigma_b, sigma_e, seed, trials)?;
    let (bob, eve) = simulate_wiretap(&code, &params, detector)?;
    let v = json!({
        "config": {
            "fine": fine,
            "coarse": coarse,
            "k": code.k(),
            "sigma_b": sigma_b,
            "sigma_e": sigma_e,
            "detector": detector,
            "offset_range": range,
        },
        "p_bob": bob.p_correct,
        "p_eve": eve.p_correct,
        "stderr_bob": bob.stderr,
        "stderr_eve": eve.stderr,
        "theta_bound_eve": eve.bound,
        "trials": trials,
        "seed": seed,
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&v)?))
}

fn parse_range(spec: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<f64> = spec
        .split(':')
        .map(|t| t.parse::<f64>().map_err(|_| Error::Parse(format!("invalid sweep {spec:?}"))))
        .collect::<Result<_>>()?;
    match parts[..] {
        [lo, hi, step] if step > 0.0 && hi >= lo => Ok((lo, hi, step)),
        _ => Err(Error::Parse(format!("sweep must be lo:hi:step, got {spec:?}"))),
    }
}

fn sweep_example2(spec: &str, trials: u64, seed: u64, fmt: Option<Format>) -> Result<String> {
    let (lo, hi, step) = parse_range(spec)?;
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    let z2 = catalog::cubic(2);
    let two_z2 = z2.scaled(2);
    let mut rows = Vec::new();
    for i in 0..count {
        let db = lo + i as f64 * step;
        let e = 10f64.powf(db / 10.0);
        let mc = example2::simulate_example2(e, trials, seed)?;
        let bound = crate::channel::eve_theta_bound(&z2, &two_z2, example2::sigma_for(e))?;
        rows.push((db, mc.p_correct, example2::pce_coset_z2(e), bound));
    }
    if fmt == Some(Format::Json) {
        let v: Vec<Value> = rows
            .iter()
            .map(|r| json!({"snr_db": r.0, "p_eve_mc": r.1, "p_eve_closed": r.2, "p_eve_bound": r.3}))
            .collect();
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v)?));
    }
    let mut s = String::from("snr_db,p_eve_mc,p_eve_closed,p_eve_bound\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{}\n", num(r.0), num(r.1), num(r.2), num(r.3)));
    }
    Ok(s)
}

fn catalog_listing(fmt: Option<Format>) -> Result<String> {
    let mut rows = Vec::new();
    for name in catalog::names() {
        let l = catalog::lookup(&name)?;
        let (dmin, tau) = l.min_norm_and_kissing()?;
        rows.push((name, l.dim(), l.volume(), rational::format_rational(&dmin), tau));
    }
    let codes: Vec<Value> = catalog::chain_table()
        .chain
        .iter()
        .map(|e| json!({"lattice": e.lattice, "code": e.code, "rows": format!("g{}..g7", e.rows_from)}))
        .collect();
    match fmt {
        Some(Format::Json) => {
            let lattices: Vec<Value> = rows
                .iter()
                .map(|r| json!({"name": r.0, "dim": r.1, "volume": r.2, "min_norm": r.3, "kissing": r.4}))
                .collect();
            Ok(format!("{}\n", serde_json::to_string_pretty(&json!({"lattices": lattices, "chain": codes}))?))
        }
        Some(Format::Csv) => {
            let mut s = String::from("name,dim,volume,min_norm,kissing\n");
            for r in rows {
                s.push_str(&format!("{},{},{},{},{}\n", r.0, r.1, num(r.2), r.3, r.4));
            }
            Ok(s)
        }
        None => {
            let mut s = format!("{:<10} {:>3} {:>10} {:>8} {:>8}\n", "name", "dim", "volume", "min", "kissing");
            for r in rows {
                s.push_str(&format!("{:<10} {:>3} {:>10.6} {:>8} {:>8}\n", r.0, r.1, r.2, r.3, r.4));
            }
            s.push_str("\nnested chain (code spanned by the listed rows of G):\n");
            for e in &catalog::chain_table().chain {
                s.push_str(&format!("  {:<10} {:<10} g{}..g7\n", e.lattice, e.code, e.rows_from));
            }
            Ok(s)
        }
    }
}
