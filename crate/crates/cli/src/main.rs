//! Command-line front end: each library subsystem behind a subcommand, with
//! deterministic CSV/JSON output at 17 significant digits.
//!
//! Exit codes: 0 success, 1 validation error (bad flags, bad parameters,
//! unreadable family file), 2 assertion failure in `--verify` mode.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use decaylab::decay::{apriori_bounds, class_membership, spectral_derivative, weighted_l2};
use decaylab::families::{theorem_check, GaussianFamily};
use decaylab::gain::{
    gain_spectrum, gain_zero_closed_form, iterate_gain, limit_gain, rational_string, LimitMethod,
    Variant,
};
use decaylab::numerics::{build_hermite_basis, Grid, SampledFunction};
use decaylab::oscillator::{
    frft_gaussian_closed_form, oscillator_evolve, schrodinger_evolve, vemuri_curve,
    OscillatorState, HERMITE_TRUNCATION, KERNEL_SIN_FLOOR,
};

const PI: f64 = std::f64::consts::PI;

#[derive(Parser)]
#[command(name = "decaylab", version, about = "Gaussian decay laboratory", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GainVariant {
    Original,
    Auxiliary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvolveMode {
    Oscillator,
    Schrodinger,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format (default: csv for tables/curves, json for reports)
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Run the invariant checks for the subcommand; failures set exit code 2
    #[arg(long, global = true)]
    verify: bool,
    /// Force a verification failure (test hook for the exit-code contract)
    #[arg(long, global = true, hide = true)]
    inject_failure: bool,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Grid point count (even, >= 8)
    #[arg(long, default_value_t = 4096)]
    n: usize,
    /// Grid half-extent L (points span [-L, L))
    #[arg(long, default_value_t = 12.0)]
    extent: f64,
}

impl GridArgs {
    fn build(&self) -> decaylab::Result<Grid> {
        Grid::with_extent(self.n, self.extent)
    }
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Built-in Gaussian e^{-lambda pi x^2} with this lambda
    #[arg(long, conflicts_with = "family")]
    gaussian: Option<f64>,
    /// Family description file (JSON: kind + atoms)
    #[arg(long)]
    family: Option<PathBuf>,
}

impl InputArgs {
    fn load_family(&self) -> Result<Option<GaussianFamily>, CliError> {
        match &self.family {
            None => Ok(None),
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Validation(format!(
                        "cannot read family file {}: {e}; pass a JSON file with kind and atoms",
                        path.display()
                    ))
                })?;
                Ok(Some(GaussianFamily::from_json(&text)?))
            }
        }
    }

    /// Sample the requested input on the grid (default: Gaussian lambda = 1).
    fn sample(&self, grid: Grid) -> Result<SampledFunction, CliError> {
        if let Some(fam) = self.load_family()? {
            return Ok(decaylab::families::family_eval(&fam, grid)?);
        }
        let lambda = self.gaussian.unwrap_or(1.0);
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(CliError::Validation(format!(
                "--gaussian {lambda} invalid: lambda must be a positive finite number"
            )));
        }
        Ok(SampledFunction::gaussian(grid, lambda)?)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Iterate the decay-gain recurrences and print the table plus the limit
    Gain {
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 60)]
        stages: usize,
        #[arg(long, value_enum, default_value_t = GainVariant::Original)]
        variant: GainVariant,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form eigendata of the companion tridiagonal matrix
    Eigen {
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[command(flatten)]
        common: Common,
    },
    /// E_a^p class membership and Gaussian decay fits for an input function
    Decay {
        #[arg(long)]
        a: f64,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Fractional Fourier transform of a Gaussian or family at angle beta
    Frft {
        #[arg(long)]
        beta: f64,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Harmonic-oscillator or free-Schrodinger snapshot at time t
    Evolve {
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum, default_value_t = EvolveMode::Oscillator)]
        mode: EvolveMode,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Omega_{a,eps}(t) decay curve (columns t, omega, pi_R, exceptional)
    Vemuri {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long, default_value_t = 0.16)]
        t_max: f64,
        #[arg(long, default_value_t = 400)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// End-to-end decay theorem report for a family
    FamilyCheck {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        a: f64,
        /// Number of sweep angles in [pi/8, 7 pi/8]
        #[arg(long, default_value_t = 8)]
        sweep: usize,
        #[command(flatten)]
        common: Common,
    },
    /// A-priori bound tables from the weighted norms of an input function
    Apriori {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
        #[arg(long, default_value_t = 6)]
        j_max: u32,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        common: Common,
    },
}

enum CliError {
    Validation(String),
    Verification(String),
}

impl From<decaylab::Error> for CliError {
    fn from(e: decaylab::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(common: &Common, content: &str) -> Result<(), CliError> {
    match &common.output {
        None => {
            use std::io::Write;
            // downstream consumers (head, etc.) may close the pipe early
            match std::io::stdout().write_all(content.as_bytes()) {
                Ok(()) => Ok(()),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(CliError::Validation(format!("cannot write stdout: {e}"))),
            }
        }
        Some(path) => std::fs::write(path, content).map_err(|e| {
            CliError::Validation(format!("cannot write {}: {e}", path.display()))
        }),
    }
}

fn check(cond: bool, what: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Verification(what.to_string()))
    }
}

/// Injected-failure hook: an always-false assertion, checked only in
/// `--verify` mode like every other assertion.
fn maybe_inject(common: &Common) -> Result<(), CliError> {
    if common.verify && common.inject_failure {
        return Err(CliError::Verification("injected failure requested".into()));
    }
    Ok(())
}

fn json_array(values: impl IntoIterator<Item = String>) -> String {
    let inner: Vec<String> = values.into_iter().collect();
    format!("[{}]", inner.join(","))
}

fn run_gain(
    depth: usize,
    stages: usize,
    variant: GainVariant,
    common: &Common,
) -> Result<(), CliError> {
    let var = match variant {
        GainVariant::Original => Variant::Original,
        GainVariant::Auxiliary => Variant::Auxiliary,
    };
    let iterates = iterate_gain(depth, stages, var)?;
    let limit = limit_gain(depth, LimitMethod::LinearSolve);

    if common.verify {
        maybe_inject(common)?;
        for states in iterates.windows(2) {
            for mu in 0..=depth {
                check(
                    states[1].theta()[mu] >= states[0].theta()[mu],
                    "iterates must be monotone nondecreasing",
                )?;
            }
        }
        for s in &iterates {
            for v in s.theta_f64() {
                check((0.5..1.0).contains(&v), "iterates must stay in [1/2, 1)")?;
            }
        }
        let exact = limit.exact().expect("linear solve carries exact data");
        check(
            exact[0] == gain_zero_closed_form(depth),
            "limit g_k(0) must equal (2k+3)/(2k+4) exactly",
        )?;
    }

    let fmt = common.format.unwrap_or(Format::Csv);
    let mut out = String::new();
    match fmt {
        Format::Csv => {
            write!(out, "stage").unwrap();
            for mu in 0..=depth {
                write!(out, ",theta_{mu}").unwrap();
            }
            out.push('\n');
            for s in &iterates {
                write!(out, "{}", s.stage()).unwrap();
                for v in s.theta_f64() {
                    write!(out, ",{}", sig17(v)).unwrap();
                }
                out.push('\n');
            }
            write!(out, "limit").unwrap();
            for v in limit.values() {
                write!(out, ",{}", sig17(*v)).unwrap();
            }
            out.push('\n');
        }
        Format::Json => {
            let rows = json_array(iterates.iter().map(|s| {
                format!(
                    "{{\"stage\":{},\"theta\":{}}}",
                    s.stage(),
                    json_array(s.theta_f64().iter().map(|v| sig17(*v)))
                )
            }));
            let lim = json_array(limit.values().iter().map(|v| sig17(*v)));
            let exact = json_array(
                limit
                    .exact()
                    .expect("linear solve carries exact data")
                    .iter()
                    .map(|r| format!("\"{}\"", rational_string(r))),
            );
            writeln!(
                out,
                "{{\"depth\":{depth},\"stages\":{stages},\"iterates\":{rows},\"limit\":{lim},\"limit_exact\":{exact}}}"
            )
            .unwrap();
        }
    }
    emit(common, &out)
}

fn run_eigen(depth: usize, common: &Common) -> Result<(), CliError> {
    let spec = gain_spectrum(depth);
    if common.verify {
        maybe_inject(common)?;
        check(spec.eigen_residual() < 1e-12, "eigen residual must be < 1e-12")?;
        check(
            spec.orthogonality_defect() < 1e-10,
            "eigenvectors must be orthogonal with a common norm",
        )?;
    }
    let fmt = common.format.unwrap_or(Format::Csv);
    let mut out = String::new();
    match fmt {
        Format::Csv => {
            out.push_str("index,eigenvalue\n");
            for (i, ev) in spec.eigenvalues().iter().enumerate() {
                writeln!(out, "{},{}", i + 1, sig17(*ev)).unwrap();
            }
        }
        Format::Json => {
            writeln!(
                out,
                "{{\"depth\":{depth},\"eigenvalues\":{},\"alpha\":{},\"spectral_radius\":{},\"residual\":{},\"orthogonality_defect\":{}}}",
                json_array(spec.eigenvalues().iter().map(|v| sig17(*v))),
                sig17(spec.alpha()),
                sig17(spec.spectral_radius()),
                sig17(spec.eigen_residual()),
                sig17(spec.orthogonality_defect()),
            )
            .unwrap();
        }
    }
    emit(common, &out)
}

fn run_decay(a: f64, input: &InputArgs, grid: &GridArgs, common: &Common) -> Result<(), CliError> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(CliError::Validation(format!(
            "--a {a} invalid: the decay level must lie in (0, 1]"
        )));
    }
    let f = input.sample(grid.build()?)?;
    let report = class_membership(&f, a)?;
    if common.verify {
        maybe_inject(common)?;
        check(
            report.fit_f.b_hat.is_finite() && report.fit_fhat.b_hat.is_finite(),
            "decay fits must produce finite exponents",
        )?;
        // strictly subcritical fits on both sides must certify membership
        if report.fit_f.b_hat > a + 0.05 && report.fit_fhat.b_hat > a + 0.05 {
            check(
                report.in_e2 && report.in_einf,
                "strictly faster decay on both sides must imply membership",
            )?;
        }
    }
    let fmt = common.format.unwrap_or(Format::Json);
    let mut out = String::new();
    match fmt {
        Format::Csv => {
            out.push_str("key,value\n");
            writeln!(out, "a,{}", sig17(report.a)).unwrap();
            writeln!(out, "in_e2,{}", report.in_e2 as u8).unwrap();
            writeln!(out, "in_einf,{}", report.in_einf as u8).unwrap();
            writeln!(out, "f_l2,{}", sig17(report.f_l2.value)).unwrap();
            writeln!(out, "f_l2_divergent,{}", report.f_l2.divergent as u8).unwrap();
            writeln!(out, "fhat_l2,{}", sig17(report.fhat_l2.value)).unwrap();
            writeln!(out, "fhat_l2_divergent,{}", report.fhat_l2.divergent as u8).unwrap();
            writeln!(out, "f_sup,{}", sig17(report.f_sup.value)).unwrap();
            writeln!(out, "fhat_sup,{}", sig17(report.fhat_sup.value)).unwrap();
            writeln!(out, "fit_f_b_hat,{}", sig17(report.fit_f.b_hat)).unwrap();
            writeln!(out, "fit_fhat_b_hat,{}", sig17(report.fit_fhat.b_hat)).unwrap();
        }
        Format::Json => {
            out = serde_json::to_string_pretty(&report).expect("report serializes");
            out.push('\n');
        }
    }
    emit(common, &out)
}

fn write_samples(f: &SampledFunction, fmt: Format) -> String {
    let grid = f.grid();
    let mut out = String::new();
    match fmt {
        Format::Csv => {
            out.push_str("x,re,im\n");
            for (i, v) in f.values().iter().enumerate() {
                writeln!(out, "{},{},{}", sig17(grid.point(i)), sig17(v.re), sig17(v.im))
                    .unwrap();
            }
        }
        Format::Json => {
            let x = json_array((0..grid.len()).map(|i| sig17(grid.point(i))));
            let re = json_array(f.values().iter().map(|v| sig17(v.re)));
            let im = json_array(f.values().iter().map(|v| sig17(v.im)));
            writeln!(out, "{{\"x\":{x},\"re\":{re},\"im\":{im}}}").unwrap();
        }
    }
    out
}

fn run_frft(
    beta: f64,
    input: &InputArgs,
    grid_args: &GridArgs,
    common: &Common,
) -> Result<(), CliError> {
    if !beta.is_finite() {
        return Err(CliError::Validation(format!(
            "--beta {beta} invalid: the angle must be finite"
        )));
    }
    let grid = grid_args.build()?;
    let f = input.sample(grid)?;

    // atoms of the input as complex Gaussian exponents
    let atoms: Vec<(Complex64, Complex64)> = if let Some(fam) = input.load_family()? {
        fam.measure
            .atoms()
            .iter()
            .map(|a| (a.weight(), fam.exponent(a.location)))
            .collect()
    } else {
        vec![(
            Complex64::new(1.0, 0.0),
            Complex64::new(input.gaussian.unwrap_or(1.0), 0.0),
        )]
    };

    let transformed = if beta.sin().abs() <= KERNEL_SIN_FLOOR {
        // identity / reflection angle: even inputs are fixed pointwise
        f.clone()
    } else {
        let params = atoms
            .iter()
            .map(|(w, z)| frft_gaussian_closed_form(*z, beta).map(|p| (*w, p)))
            .collect::<Result<Vec<_>, _>>()?;
        SampledFunction::from_fn(grid, |x| {
            params.iter().map(|(w, p)| w * p.eval(x)).sum()
        })?
    };

    if common.verify {
        maybe_inject(common)?;
        let drift = (transformed.l2_norm() - f.l2_norm()).abs();
        check(drift < 1e-6, "fractional transform must preserve the L2 norm")?;
    }

    emit(common, &write_samples(&transformed, common.format.unwrap_or(Format::Csv)))
}

fn run_evolve(
    t: f64,
    mode: EvolveMode,
    input: &InputArgs,
    grid_args: &GridArgs,
    common: &Common,
) -> Result<(), CliError> {
    if !t.is_finite() {
        return Err(CliError::Validation(format!(
            "--t {t} invalid: the time must be finite"
        )));
    }
    let grid = grid_args.build()?;
    let f = input.sample(grid)?;
    let basis = build_hermite_basis(HERMITE_TRUNCATION, grid)?;

    let snapshot = match mode {
        EvolveMode::Oscillator => {
            let state = OscillatorState::from_function(&f, &basis)?;
            oscillator_evolve(&state, t).synthesize(&basis)?
        }
        EvolveMode::Schrodinger => schrodinger_evolve(&f, t, &basis)?,
    };

    if common.verify {
        maybe_inject(common)?;
        let drift = (snapshot.l2_norm() - f.l2_norm()).abs();
        check(drift < 1e-6, "unitary evolution must preserve the L2 norm")?;
    }

    emit(common, &write_samples(&snapshot, common.format.unwrap_or(Format::Csv)))
}

fn run_vemuri(
    a: f64,
    eps: f64,
    t_min: f64,
    t_max: f64,
    points: usize,
    common: &Common,
) -> Result<(), CliError> {
    let curve = vemuri_curve(a, eps, t_min, t_max, points)?;

    if common.verify {
        maybe_inject(common)?;
        let pi_r = PI * curve.r;
        for p in &curve.samples {
            check(p.omega >= pi_r - 1e-12, "omega must never dip below pi R")?;
        }
        let t_star = 1.0 / (4.0 * PI);
        if t_min <= t_star && t_star <= t_max {
            let at_min = decaylab::oscillator::vemuri_omega(a, eps, t_star)?;
            check(
                (at_min.omega - pi_r).abs() < 1e-12,
                "omega at t = 1/(4 pi) must equal pi R",
            )?;
        }
    }

    let fmt = common.format.unwrap_or(Format::Csv);
    let mut out = String::new();
    match fmt {
        Format::Csv => {
            out.push_str("t,omega,pi_R,exceptional\n");
            for p in &curve.samples {
                writeln!(
                    out,
                    "{},{},{},{}",
                    sig17(p.t),
                    sig17(p.omega),
                    sig17(p.pi_r),
                    p.exceptional as u8
                )
                .unwrap();
            }
        }
        Format::Json => {
            out = serde_json::to_string_pretty(&curve).expect("curve serializes");
            out.push('\n');
        }
    }
    emit(common, &out)
}

fn run_family_check(
    family: &PathBuf,
    a: f64,
    sweep: usize,
    common: &Common,
) -> Result<(), CliError> {
    if sweep < 2 {
        return Err(CliError::Validation(format!(
            "--sweep {sweep} invalid: need at least 2 angles"
        )));
    }
    let text = std::fs::read_to_string(family).map_err(|e| {
        CliError::Validation(format!(
            "cannot read family file {}: {e}; pass a JSON file with kind and atoms",
            family.display()
        ))
    })?;
    let fam = GaussianFamily::from_json(&text)?;
    let betas: Vec<f64> = (0..sweep)
        .map(|i| PI / 8.0 + (6.0 * PI / 8.0) * i as f64 / (sweep - 1) as f64)
        .collect();
    let report = theorem_check(&fam, a, &betas)?;

    if common.verify {
        maybe_inject(common)?;
        check(report.pointwise_pass, "pointwise decay certificate must pass")?;
        for b in &report.betas {
            check(b.passes, "every sweep angle must clear its decay threshold")?;
        }
    }

    let fmt = common.format.unwrap_or(Format::Json);
    let mut out = String::new();
    match fmt {
        Format::Csv => {
            out.push_str("beta,b_hat,threshold,passes\n");
            for b in &report.betas {
                writeln!(
                    out,
                    "{},{},{},{}",
                    sig17(b.beta),
                    sig17(b.b_hat),
                    sig17(b.threshold),
                    b.passes as u8
                )
                .unwrap();
            }
        }
        Format::Json => {
            out = serde_json::to_string_pretty(&report).expect("report serializes");
            out.push('\n');
        }
    }
    emit(common, &out)
}

fn run_apriori(
    a: f64,
    k_max: u32,
    j_max: u32,
    input: &InputArgs,
    grid_args: &GridArgs,
    common: &Common,
) -> Result<(), CliError> {
    let grid = grid_args.build()?;
    let f = input.sample(grid)?;
    let fhat = decaylab::numerics::fourier_transform(&f, decaylab::numerics::Direction::Forward)?;
    let c2f_rep = weighted_l2(&f, a);
    let c2fhat_rep = weighted_l2(&fhat, a);
    if c2f_rep.divergent || c2fhat_rep.divergent {
        return Err(CliError::Validation(format!(
            "weighted norm at level {a} diverges for this input; pick a smaller --a"
        )));
    }
    let (c2f, c2fhat) = (c2f_rep.value, c2fhat_rep.value);

    let mut rows = Vec::new();
    for k in 0..=k_max {
        for j in 0..=j_max {
            rows.push(apriori_bounds(k, j, a, c2f, c2fhat)?);
        }
    }

    if common.verify {
        maybe_inject(common)?;
        for row in rows.iter().filter(|r| r.j == 0) {
            let dk = spectral_derivative(&f, row.k)?;
            check(
                dk.l2_norm() <= row.sobolev_l2 * (1.0 + 1e-9),
                "measured derivative L2 norm must respect the bound",
            )?;
        }
        for row in rows.iter().filter(|r| r.k == 0) {
            let dj = spectral_derivative(&f, row.j)?;
            check(
                dj.sup_norm() <= row.deriv_sup * (1.0 + 1e-9),
                "measured derivative sup must respect the bound",
            )?;
        }
    }

    let fmt = common.format.unwrap_or(Format::Csv);
    let mut out = String::new();
    match fmt {
        Format::Csv => {
            out.push_str("k,j,sobolev_l2,deriv_sup,deriv_l1,moment_sup\n");
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.k,
                    r.j,
                    sig17(r.sobolev_l2),
                    sig17(r.deriv_sup),
                    sig17(r.deriv_l1),
                    sig17(r.moment_sup)
                )
                .unwrap();
            }
        }
        Format::Json => {
            out = serde_json::to_string_pretty(&rows).expect("rows serialize");
            out.push('\n');
        }
    }
    emit(common, &out)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match &cli.cmd {
        Cmd::Gain {
            depth,
            stages,
            variant,
            common,
        } => run_gain(*depth, *stages, *variant, common),
        Cmd::Eigen { depth, common } => run_eigen(*depth, common),
        Cmd::Decay {
            a,
            input,
            grid,
            common,
        } => run_decay(*a, input, grid, common),
        Cmd::Frft {
            beta,
            input,
            grid,
            common,
        } => run_frft(*beta, input, grid, common),
        Cmd::Evolve {
            t,
            mode,
            input,
            grid,
            common,
        } => run_evolve(*t, *mode, input, grid, common),
        Cmd::Vemuri {
            a,
            eps,
            t_min,
            t_max,
            points,
            common,
        } => run_vemuri(*a, *eps, *t_min, *t_max, *points, common),
        Cmd::FamilyCheck {
            family,
            a,
            sweep,
            common,
        } => run_family_check(family, *a, *sweep, common),
        Cmd::Apriori {
            a,
            k_max,
            j_max,
            input,
            grid,
            common,
        } => run_apriori(*a, *k_max, *j_max, input, grid, common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ")
                .to_string();
            eprintln!("error: {first} (run with --help for usage)");
            return ExitCode::from(1);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}
