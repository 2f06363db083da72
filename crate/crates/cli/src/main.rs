//! `toricoh`: Cox rings, irrelevant ideals and cohomology of twisting
//! sheaves on complete simplicial toric varieties.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use toric_cohomology::fan::validate_fan_with;
use toric_cohomology::fan::ValidationOptions;
use toric_cohomology::homalg::{DegreeBox, PresentedModule};
use toric_cohomology::linalg::RankBackend;
use toric_cohomology::local_cohomology::{
    is_regular_sequence, koszul_grade, self_duality_check, ExtOracle,
};
use toric_cohomology::sheaf::ToricCohomology;
use toric_cohomology::{
    irrelevant_generators, parse_fan, parse_polynomial, Fan, GradingClass, Polynomial, SignPattern,
};

#[derive(Parser, Debug)]
#[command(
    name = "toricoh",
    version,
    about = "Cohomology of twisting sheaves on complete simplicial toric varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Fan description file.
    fan: PathBuf,
    /// Emit a single JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Seed for the randomized completeness check.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check simpliciality and completeness.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Generators of the irrelevant ideal.
    Irrelevant {
        #[command(flatten)]
        common: Common,
    },
    /// Class group and the degrees of the Cox ring variables.
    Grading {
        #[command(flatten)]
        common: Common,
    },
    /// Cohomology of the complement U of the exceptional set, as monomial cones.
    CohomologyU {
        #[command(flatten)]
        common: Common,
        /// Compute ranks modulo this prime (probabilistic).
        #[arg(long)]
        modp: Option<u64>,
    },
    /// Dimensions of H^p(X, O(alpha)).
    Sheaf {
        #[command(flatten)]
        common: Common,
        /// Classes, e.g. "-3" or "-6,-2;0,0" (coordinates in the `grading` basis).
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        /// Only report this cohomological degree.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        modp: Option<u64>,
    },
    /// Hilbert function of Ext^p(S/I^[m], S) on a box around the origin.
    ExtOracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
    /// Koszul homology checks for a sequence in the Cox ring.
    KoszulCheck {
        #[command(flatten)]
        common: Common,
        /// Comma-separated polynomials in x1..xn (default: all variables).
        #[arg(long)]
        seq: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
}

/// Error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl ToString) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }

    fn usage(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_fan(path: &Path) -> Result<Fan, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::domain(format!("cannot read fan file {}: {e}", path.display())))?;
    parse_fan(&text).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn options(seed: Option<u64>) -> ValidationOptions {
    let mut opts = ValidationOptions::default();
    if let Some(seed) = seed {
        opts.seed = seed;
    }
    opts
}

fn backend(modp: Option<u64>) -> Result<RankBackend, Failure> {
    match modp {
        None => Ok(RankBackend::Exact),
        Some(p) if (2..1 << 31).contains(&p) && is_prime(p) => Ok(RankBackend::ModPrime(p)),
        Some(p) => Err(Failure::usage(format!(
            "--modp {p}: expected a prime below 2^31"
        ))),
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn analysis(common: &Common, modp: Option<u64>) -> Result<ToricCohomology, Failure> {
    let backend = backend(modp)?;
    let fan = load_fan(&common.fan)?;
    let report = validate_fan_with(&fan, options(common.seed));
    ToricCohomology::from_validated(fan, report, backend).map_err(Failure::domain)
}

fn parse_degrees(text: &str) -> Result<Vec<Vec<i64>>, Failure> {
    text.split(';')
        .map(|class| {
            class
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Failure::usage(format!("--degree: bad integer {x:?}")))
                })
                .collect()
        })
        .collect()
}

fn emit(json: bool, value: Value, text: String) {
    let out = if json {
        serde_json::to_string_pretty(&value).expect("serializable") + "\n"
    } else {
        text
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().write_all(out.as_bytes());
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { common } => {
            let fan = load_fan(&common.fan)?;
            let r = validate_fan_with(&fan, options(common.seed));
            let mut text = format!(
                "dimension      {}\nrays           {}\nmax cones      {}\nsimplicial     {}\nwall condition {}\ncomplete       {}\n",
                fan.dim(),
                fan.nrays(),
                fan.max_cones().len(),
                r.simplicial,
                r.wall_condition,
                serde_json::to_value(r.complete).expect("serializable").as_str().unwrap_or_default()
            );
            for m in &r.messages {
                text.push_str(&format!("note: {m}\n"));
            }
            let value = json!({
                "dim": fan.dim(),
                "rays": fan.nrays(),
                "max_cones": fan.max_cones().len(),
                "simplicial": r.simplicial,
                "wall_condition": r.wall_condition,
                "complete": r.is_complete(),
                "completeness": r.complete,
                "messages": r.messages,
            });
            emit(common.json, value, text);
        }
        Command::Irrelevant { common } => {
            let fan = load_fan(&common.fan)?;
            let gens = irrelevant_generators(&fan);
            let names: Vec<String> = gens.iter().map(ToString::to_string).collect();
            let text = format!("I = <{}>\n({} generators)\n", names.join(", "), names.len());
            let supports: Vec<Vec<usize>> = gens
                .iter()
                .map(|g| g.support().iter().map(|i| i + 1).collect())
                .collect();
            emit(
                common.json,
                json!({ "generators": names, "supports": supports }),
                text,
            );
        }
        Command::Grading { common } => {
            let fan = load_fan(&common.fan)?;
            let g = toric_cohomology::GradingGroup::new(&fan).map_err(Failure::domain)?;
            let degs: Vec<Vec<i64>> = g
                .variable_degrees()
                .iter()
                .map(GradingClass::to_vec)
                .collect();
            let mut text = format!("class group: Z^{}", g.free_rank());
            for t in g.torsion() {
                text.push_str(&format!(" + Z/{t}"));
            }
            text.push('\n');
            for (i, d) in degs.iter().enumerate() {
                let parts: Vec<String> = d.iter().map(|x| format!("{x:>4}")).collect();
                text.push_str(&format!("deg x{:<3} ({} )\n", i + 1, parts.join(",")));
            }
            let value = json!({
                "free_rank": g.free_rank(),
                "torsion": g.torsion(),
                "variable_degrees": degs,
                "basis_note": g.basis_note(),
            });
            emit(common.json, value, text);
        }
        Command::CohomologyU { common, modp } => {
            let t = analysis(&common, modp)?;
            let report = t.report(&[]).map_err(Failure::domain)?;
            let mut text = String::new();
            for cf in &report.closed_forms {
                text.push_str(&format!(
                    "H^{}(U, O) = {}\n",
                    cf.p,
                    cf.summands.join("  (+)  ")
                ));
            }
            text.push_str(&format!("all other H^p(U, O) vanish (p < {})\n", t.nvars()));
            text.push_str(&format!(
                "degree-0 check h^p(O) = (1,0,...,0): {}\n",
                report.degree_zero_check
            ));
            if !report.exact {
                text.push_str("ranks computed modulo a prime: probabilistic\n");
            }
            text.push_str(&format!("note: {}\n", report.notes[0]));
            emit(
                common.json,
                serde_json::to_value(&report).expect("serializable"),
                text,
            );
        }
        Command::Sheaf {
            common,
            degree,
            p,
            modp,
        } => {
            let raw = parse_degrees(&degree)?;
            let t = analysis(&common, modp)?;
            let degrees: Vec<GradingClass> = raw
                .iter()
                .map(|v| {
                    t.grading().class_from_slice(v).map_err(|_| {
                        Failure::usage(format!(
                            "--degree: expected {} coordinates per class (see `toricoh grading`), got {}",
                            t.grading().free_rank() + t.grading().torsion().len(),
                            v.len()
                        ))
                    })
                })
                .collect::<Result<_, _>>()?;
            if let Some(p) = p {
                if p > t.nvars() {
                    return Err(Failure::usage(format!(
                        "--p {p} exceeds the number of variables {}",
                        t.nvars()
                    )));
                }
            }
            let mut report = t.report(&degrees).map_err(Failure::domain)?;
            if let Some(p) = p {
                report.per_degree.retain(|e| e.p == p);
            }
            let mut text = format!("{:<20} {:>3} {:>10}\n", "alpha", "p", "dim");
            for e in &report.per_degree {
                let alpha: Vec<String> = e.alpha.iter().map(i64::to_string).collect();
                text.push_str(&format!(
                    "{:<20} {:>3} {:>10}\n",
                    format!("({})", alpha.join(",")),
                    e.p,
                    e.dim
                ));
            }
            if !report.exact {
                text.push_str("ranks computed modulo a prime: probabilistic\n");
            }
            emit(
                common.json,
                serde_json::to_value(&report).expect("serializable"),
                text,
            );
        }
        Command::ExtOracle {
            common,
            p,
            m,
            radius,
        } => {
            if m == 0 {
                return Err(Failure::usage("--m must be positive"));
            }
            if radius < 0 {
                return Err(Failure::usage("--radius must be nonnegative"));
            }
            let fan = load_fan(&common.fan)?;
            let n = fan.nrays();
            if p > n + 1 {
                return Err(Failure::usage(format!(
                    "--p {p} exceeds the resolution length bound {}",
                    n + 1
                )));
            }
            let oracle =
                ExtOracle::new(&irrelevant_generators(&fan), n, m).map_err(Failure::domain)?;
            let ext = oracle.ext(p).map_err(Failure::domain)?;
            let hf = ext
                .hilbert_function_box(&DegreeBox::cube(n, radius))
                .map_err(Failure::domain)?;
            let mut patterns: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
            for (a, v) in &hf.values {
                *patterns.entry(SignPattern::of(a).one_based()).or_default() += v;
            }
            let shifts = ext.shifts().map(|s| s.to_vec()).unwrap_or_default();
            let mut text = format!(
                "Ext^{p}(S/I^[{m}], S): {} generators, resolution ranks {:?}\n",
                ext.ambient_rank(),
                oracle.resolution.ranks
            );
            text.push_str(&format!(
                "nonzero degrees in box radius {radius}: {}\n",
                hf.values.len()
            ));
            for (neg, total) in &patterns {
                text.push_str(&format!(
                    "  negative support {neg:?}: total dimension {total}\n"
                ));
            }
            let value = json!({
                "p": p,
                "m": m,
                "radius": radius,
                "resolution_ranks": oracle.resolution.ranks,
                "generator_degrees": shifts,
                "relations": ext.relations().len(),
                "nonzero_degrees": hf.values.iter().map(|(a, v)| json!({"degree": a, "dim": v})).collect::<Vec<_>>(),
                "negative_supports": patterns.iter().map(|(k, v)| json!({"negative": k, "dim": v})).collect::<Vec<_>>(),
            });
            emit(common.json, value, text);
        }
        Command::KoszulCheck {
            common,
            seq,
            radius,
        } => {
            if radius < 0 {
                return Err(Failure::usage("--radius must be nonnegative"));
            }
            let fan = load_fan(&common.fan)?;
            let n = fan.nrays();
            let seq: Vec<Polynomial> = match seq {
                None => (0..n)
                    .map(|i| Polynomial::monomial(toric_cohomology::Monomial::var(n, i)))
                    .collect(),
                Some(s) => s
                    .split(',')
                    .map(|f| {
                        parse_polynomial(f, n).map_err(|e| Failure::usage(format!("--seq: {e}")))
                    })
                    .collect::<Result<_, _>>()?,
            };
            let s = PresentedModule::free(n, vec![vec![0; n]]);
            let regular = is_regular_sequence(&seq, &s).map_err(Failure::domain)?;
            let grade = koszul_grade(&seq, &s).map_err(Failure::domain)?;
            let domain = DegreeBox::cube(n, radius);
            let duality: Vec<bool> = (0..=seq.len())
                .map(|p| self_duality_check(&seq, &s, p, &domain))
                .collect::<Result<_, _>>()
                .map_err(Failure::domain)?;
            let names: Vec<String> = seq.iter().map(ToString::to_string).collect();
            let mut text = format!("sequence ({})\nregularity: {regular:?}\n", names.join(", "));
            text.push_str(&format!(
                "grade (first nonzero H^p): {}\n",
                grade.map_or("none".to_string(), |g| g.to_string())
            ));
            for (p, ok) in duality.iter().enumerate() {
                text.push_str(&format!("H_{p} ~ H^{}: {ok}\n", seq.len() - p));
            }
            let value = json!({
                "sequence": names,
                "regularity": regular,
                "grade": grade,
                "self_duality": duality,
                "radius": radius,
            });
            emit(common.json, value, text);
        }
    }
    Ok(())
}
