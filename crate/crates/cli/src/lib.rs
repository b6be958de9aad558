//! Argument parsing and dispatch for the `ellstab` binary, kept in a library
//! so the integration tests can drive it without spawning processes.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ellstab::charges::kernel_phase;
use ellstab::fm::phi_z_charge_f64;
use ellstab::rational::{fmt_significant, int, parse_rational, sign, to_f64};
use ellstab::verify::{run_selftest_with_tol, DEFAULT_SEED, DEFAULT_TOL};
use ellstab::{
    cce_residual, phase, slope, solve_cce, CceInput, ChargeSpec, ChargeValueF64, ChernVector, Error,
    KernelClass, Phase, RayParam, Rational, Regime, Surface, Variant,
};

/// What a run produced: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn domain_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ellstab", version, about = "Exact numerics for weak stability conditions on elliptic K3 surfaces")]
struct Cli {
    /// e = −Θ²; 2 for the K3
    #[arg(long, global = true, default_value_t = 2, allow_hyphen_values = true)]
    e: i64,
    /// D_α, fixing the polarization α = Θ + (D_α + e)f
    #[arg(long = "d-alpha", global = true, default_value_t = 0, allow_hyphen_values = true)]
    d_alpha: i64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate a central charge on a class
    Eval {
        /// origin | v-axis:V | d-axis:D | vd:V:D | general:Rw:Dw:RB:DB |
        /// todd:Rw:Dw:RB:DB | todd-special[:D_α]
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
        /// r:a:b:s
        #[arg(long, allow_hyphen_values = true, value_parser = parse_class)]
        class: ChernVector,
    },
    /// Limit phase of a kernel object
    PhaseLimit {
        #[arg(long, value_parser = parse_regime)]
        regime: Regime,
        /// Multiplicities n0:n1 (a single integer on the axes)
        #[arg(long)]
        kernel: String,
        /// Ray [V : D] = p:q
        #[arg(long, default_value = "1:1", value_parser = parse_ray)]
        ray: RayParam,
    },
    /// Kernel generators of a regime
    Kernel {
        #[arg(long, value_parser = parse_regime)]
        regime: Regime,
        /// Also run the brute-force search with this window (after-fm only)
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Numerical Fourier–Mukai transform of a class
    Fm {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_class)]
        class: ChernVector,
    },
    /// Solve the central charge equation
    Cce(CceArgs),
    /// Sample phases along a ray towards V = D = 0 as CSV
    Trajectory {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_class, conflicts_with = "kernel")]
        class: Option<ChernVector>,
        #[arg(long, required_unless_present = "class")]
        kernel: Option<String>,
        #[arg(long, default_value = "origin", value_parser = parse_regime)]
        regime: Regime,
        #[arg(long, default_value = "1:1", value_parser = parse_ray)]
        ray: RayParam,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(2..=15))]
        steps: u32,
    },
    /// Run the built-in verification suite
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct CceArgs {
    #[arg(long = "D", allow_hyphen_values = true, value_parser = parse_q)]
    d: Rational,
    #[arg(long = "V", allow_hyphen_values = true, value_parser = parse_q)]
    v: Rational,
    #[arg(long = "RB", allow_hyphen_values = true, value_parser = parse_q)]
    r_b: Rational,
    #[arg(long = "DB", allow_hyphen_values = true, value_parser = parse_q)]
    d_b: Rational,
    /// plain | td
    #[arg(long, default_value = "td", value_parser = parse_variant)]
    variant: Variant,
}

fn parse_q(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_class(s: &str) -> Result<ChernVector, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_ray(s: &str) -> Result<RayParam, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Float residual tolerance, from `ELLSTAB_TOL` when set.
fn tolerance() -> Result<f64, String> {
    match std::env::var("ELLSTAB_TOL") {
        Ok(s) => s
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t > 0.0)
            .ok_or_else(|| format!("ELLSTAB_TOL must be a positive number, got `{s}`")),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return if err.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    let surface = match Surface::new(cli.e, cli.d_alpha) {
        Ok(s) => s,
        Err(e) => return Outcome::domain_error(e),
    };
    match run(&surface, cli.cmd) {
        Ok(out) => out,
        Err(e) => Outcome::domain_error(e),
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn phase_json(p: &Phase) -> Value {
    let shown = match p.exact_fraction() {
        Some(q) => q.to_string(),
        None => fmt_significant(p.approx(), 12),
    };
    let (re, im) = p.direction();
    json!({
        "phase": shown,
        "branch": p.branch(),
        "dir": [re.to_string(), im.to_string()],
        "approx": p.approx(),
    })
}

fn parse_charge(spec: &str, surface: &Surface) -> Result<ChargeSpec, Error> {
    if spec == "todd-special" {
        return Ok(ChargeSpec::ToddSpecial {
            d_alpha: surface.d_alpha(),
        });
    }
    spec.parse()
}

fn parse_kernel(regime: Regime, s: &str) -> Result<KernelClass, Error> {
    let err = || Error::Parse {
        what: "kernel multiplicities",
        input: s.to_string(),
    };
    let mult = s
        .split(':')
        .map(|x| x.trim().parse::<u64>().map_err(|_| err()))
        .collect::<Result<Vec<_>, _>>()?;
    KernelClass::new(regime, mult)
}

fn run(surface: &Surface, cmd: Cmd) -> Result<Outcome, Error> {
    match cmd {
        Cmd::Eval { charge, class } => {
            let spec = parse_charge(&charge, surface)?;
            let z = surface.eval(&spec, &class)?;
            let (ph, sl) = if z.is_zero() {
                (Value::Null, Value::Null)
            } else {
                (phase_json(&phase(&z)?), json!(slope(&z)?.to_string()))
            };
            Ok(Outcome::ok(to_json(&json!({
                "charge": spec.to_string(),
                "class": class,
                "value": z,
                "phase": ph,
                "slope": sl,
            }))))
        }
        Cmd::PhaseLimit { regime, kernel, ray } => {
            let k = parse_kernel(regime, &kernel)?;
            let p = kernel_phase(&k, &ray)?;
            let mut out = phase_json(&p);
            out["regime"] = json!(regime);
            out["kernel"] = json!(kernel);
            out["ray"] = json!(ray.to_string());
            Ok(Outcome::ok(to_json(&out)))
        }
        Cmd::Kernel { regime, bound } => {
            let basis = surface.classify_kernel(regime)?;
            let mut out = serde_json::to_value(&basis).expect("kernel basis serializes");
            if let Some(bound) = bound {
                if regime != Regime::AfterFm {
                    return Err(Error::RegimeMismatch(regime.name(), Regime::AfterFm.name()));
                }
                let found = surface.classify_kernel_after_fm_bruteforce(bound)?;
                out["bruteforce"] = json!({
                    "bound": bound,
                    "classes": found.classes,
                    "truncated": found.truncated,
                });
            }
            Ok(Outcome::ok(to_json(&out)))
        }
        Cmd::Fm { class } => {
            let image = surface.fm_transform(&class)?;
            Ok(Outcome::ok(to_json(&json!({ "class": image }))))
        }
        Cmd::Cce(args) => cce(surface, args),
        Cmd::Trajectory {
            class,
            kernel,
            regime,
            ray,
            steps,
        } => trajectory(surface, class, kernel, regime, &ray, steps),
        Cmd::Selftest { seed } => {
            let tol = tolerance().map_err(|msg| Error::Parse {
                what: "tolerance",
                input: msg,
            })?;
            let report = run_selftest_with_tol(surface, seed, tol);
            let text = to_json(&serde_json::to_value(&report).expect("report serializes"));
            let mut out = Outcome::ok(text);
            if !report.passed {
                out.code = 1;
                for c in report.failures() {
                    out.stderr.push_str(&format!("FAIL {} {}: {}\n", c.id, c.anchor, c.detail));
                }
            }
            Ok(out)
        }
    }
}

fn cce(surface: &Surface, args: CceArgs) -> Result<Outcome, Error> {
    let tol = tolerance().map_err(|msg| Error::Parse {
        what: "tolerance",
        input: msg,
    })?;
    let input = CceInput {
        d_omega: args.d,
        v_omega: args.v,
        r_b: args.r_b,
        d_b: args.d_b,
        e: surface.e(),
        variant: args.variant,
    };
    let out = solve_cce(&input)?;
    let res = cce_residual(&input, &out)?;
    let within = res.float_residual.is_none_or(|r| r <= tol);
    let mut json = serde_json::to_value(&out).expect("CCE output serializes");
    json["residual"] = json!({
        "exact_zero": res.exact_zero,
        "float_residual": res.float_residual,
        "tolerance": tol,
    });
    let mut outcome = Outcome::ok(to_json(&json));
    if !res.exact_zero || !within {
        outcome.code = 1;
        outcome.stderr = "error: central charge equation residual check failed\n".into();
    }
    Ok(outcome)
}

fn trajectory(
    surface: &Surface,
    class: Option<ChernVector>,
    kernel: Option<String>,
    regime: Regime,
    ray: &RayParam,
    steps: u32,
) -> Result<Outcome, Error> {
    if sign(ray.q()) == 0 {
        return Err(Error::InvalidRay(format!("{ray} (trajectories step D, so q must be positive)")));
    }
    let class = match (class, kernel) {
        (Some(c), _) => c,
        (None, Some(k)) => kernel_class_vector(surface, &parse_kernel(regime, &k)?)?,
        (None, None) => unreachable!("clap requires --class or --kernel"),
    };
    let ratio = to_f64(ray.p()) / to_f64(ray.q());
    let e = surface.e() as f64;
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse {
        what: "CSV output",
        input: e.to_string(),
    };
    writer.write_record(["D", "V", "re", "im", "phase"]).map_err(io)?;
    for k in 1..=steps {
        let d = 10f64.powi(-(k as i32));
        let v = ratio * d;
        let z: ChargeValueF64 = match regime {
            Regime::AfterFm => {
                surface.require_k3()?;
                phi_z_charge_f64(d, v, surface.d_alpha()).eval(2.0, &class)
            }
            _ => ellstab::FloatCharge {
                omega: (1.0, d + e),
                ch0_coeff: v,
                b: (0.0, 0.0),
            }
            .eval(e, &class),
        };
        if z.re == 0.0 && z.im == 0.0 {
            return Err(Error::ZeroCharge);
        }
        writer
            .write_record([d, v, z.re, z.im, z.phase_positive()].map(|x| fmt_significant(x, 12)))
            .map_err(io)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Parse {
        what: "CSV output",
        input: e.to_string(),
    })?;
    Ok(Outcome::ok(String::from_utf8(bytes).expect("CSV is UTF-8")))
}

/// The class of a kernel object: `m₀·O_Θ(−1) + m₁·O_X[1]` at the origin,
/// `n₀·L₀[1] + n₁·L₁` after the transform.
fn kernel_class_vector(surface: &Surface, k: &KernelClass) -> Result<ChernVector, Error> {
    if matches!(k.regime(), Regime::VAxis | Regime::DAxis) {
        return Err(Error::Parse {
            what: "trajectory regime",
            input: format!("{} has a fixed kernel phase", k.regime()),
        });
    }
    let basis = surface.classify_kernel(k.regime())?;
    let gens: Vec<ChernVector> = match k.regime() {
        // classify_kernel lists O_X[1] first at the origin
        Regime::Origin => vec![basis.generators[1].clone(), basis.generators[0].clone()],
        _ => basis.generators,
    };
    Ok(gens
        .iter()
        .zip(k.multiplicities())
        .fold(ChernVector::zero(), |acc, (g, &m)| acc + g.clone() * &int(m as i64)))
}
