use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use optical_bloch::sweep::{Backend, NumericOptions, Observable, DEFAULT_GRID, DEFAULT_REVIVAL_THRESHOLD};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "obloch",
    version,
    about = "Driven, damped two-level system: time evolution, maps and steady states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Time series of one trajectory (CSV + JSON).
    Simulate(SimulateArgs),
    /// Observable over (time, Ω) or (time, log10 T2) (CSV + PGM + JSON).
    Sweep(SweepArgs),
    /// Equilibrium state and optimal drive (JSON on stdout).
    SteadyState(ReportArgs),
    /// Regenerate a built-in figure preset.
    Figure(FigureArgs),
    /// Physicality report (JSON on stdout); exit 1 if any condition fails.
    Validate(ReportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PhysArgs {
    /// Population relaxation time.
    #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
    pub t1: f64,
    /// Decoherence time.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub t2: f64,
    /// Rabi frequency.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    /// Detuning; the analytic backend needs 0.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Thermal population difference, in [0, 1].
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub r3tilde: f64,
    /// Field phase in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub phys: PhysArgs,
    /// Also write the JSON to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendKind {
    Analytic,
    Numeric,
}

#[derive(Debug, Clone, Args)]
pub struct BackendArgs {
    #[arg(long, value_enum, default_value_t = BackendKind::Analytic)]
    pub backend: BackendKind,
    /// Largest RK4 step (numeric backend); default min(T1, T2, 1/max(Ω, |Δ|, 1)) / 100.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Largest allowed change under step halving (numeric backend).
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
}

impl BackendArgs {
    pub fn backend(&self) -> Backend {
        match self.backend {
            BackendKind::Analytic => Backend::Analytic,
            BackendKind::Numeric => Backend::Numeric(NumericOptions {
                max_step: self.dt,
                convergence_factor: 2,
                tolerance: self.tolerance,
            }),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub phys: PhysArgs,
    /// Initial state: ground, excited, x, y, mixed, or "r1,r2,r3".
    #[arg(long, default_value = "ground")]
    pub initial: String,
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    /// Number of time samples including t = 0.
    #[arg(long, default_value_t = 1001)]
    pub samples: usize,
    #[command(flatten)]
    pub backend: BackendArgs,
    /// ζ level for the revival report.
    #[arg(long, default_value_t = DEFAULT_REVIVAL_THRESHOLD)]
    pub threshold: f64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// File stem of the outputs.
    #[arg(long, default_value = "simulate")]
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Omega,
    T2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObservableArg {
    Zeta,
    Chi,
    Log10Zeta,
    Rho11,
}

impl From<ObservableArg> for Observable {
    fn from(o: ObservableArg) -> Self {
        match o {
            ObservableArg::Zeta => Observable::Zeta,
            ObservableArg::Chi => Observable::Chi,
            ObservableArg::Log10Zeta => Observable::Log10Zeta,
            ObservableArg::Rho11 => Observable::Rho11,
        }
    }
}

/// `N` (square) or `NXxNY`, x being time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n_x: usize,
    pub n_y: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_x: DEFAULT_GRID,
            n_y: DEFAULT_GRID,
        }
    }
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| -> Result<usize, String> {
            match v.trim().parse::<usize>() {
                Ok(n) if n >= 2 => Ok(n),
                _ => Err(format!("grid size must be an integer >= 2, got '{v}'")),
            }
        };
        match s.split_once(['x', 'X']) {
            Some((a, b)) => Ok(Self {
                n_x: parse(a)?,
                n_y: parse(b)?,
            }),
            None => {
                let n = parse(s)?;
                Ok(Self { n_x: n, n_y: n })
            }
        }
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.n_x, self.n_y)
    }
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    /// Samples along time and along the parameter axis: N or NXxNY.
    #[arg(long, default_value_t = GridSpec::default())]
    pub grid: GridSpec,
    /// Grayscale levels.
    #[arg(long, default_value_t = 20)]
    pub levels: u32,
    /// Observable value mapped to the lightest shade.
    #[arg(long, allow_negative_numbers = true)]
    pub v_min: Option<f64>,
    /// Observable value mapped to black.
    #[arg(long, allow_negative_numbers = true)]
    pub v_max: Option<f64>,
    /// Threads for the sweep; default uses all cores.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub phys: PhysArgs,
    /// Parameter on the vertical axis; for t2 the bounds are log10 exponents.
    #[arg(long, value_enum, default_value_t = SweepParam::Omega)]
    pub param: SweepParam,
    #[arg(long, allow_negative_numbers = true)]
    pub y_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y_max: Option<f64>,
    #[arg(long, default_value_t = 4.0)]
    pub t_max: f64,
    #[arg(long, value_enum, default_value_t = ObservableArg::Zeta)]
    pub observable: ObservableArg,
    #[arg(long, default_value = "ground")]
    pub initial: String,
    #[command(flatten)]
    pub map: MapArgs,
    #[command(flatten)]
    pub backend: BackendArgs,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, default_value = "sweep")]
    pub name: String,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// Preset name (fig1a, fig1b, fig2a, fig2b, fig3, fig4a, fig4b, fig4c, fig5a, fig5b, fig6).
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y_max: Option<f64>,
    /// Time samples of a series preset.
    #[arg(long, default_value_t = 1001)]
    pub samples: usize,
    #[command(flatten)]
    pub map: MapArgs,
    #[command(flatten)]
    pub backend: BackendArgs,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}
