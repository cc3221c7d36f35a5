//! `hwb`: batch front end over `hwb_core`.
//!
//! Exit status: 0 success, 1 malformed input, 2 validation failure,
//! 3 cap or budget exceeded.

mod algebra;
mod deform_cmd;
mod error;
mod genera_cmd;
mod inputs;
mod report;
mod spectral_cmd;
mod weyl_cmd;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use error::CliError;
use report::{render, Format, Outcome};

#[derive(Parser)]
#[command(name = "hwb", version, about = "Exact cohomology, spectral sequences, deformations and q-series reports")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Seed for randomized property suites.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Degree, arity or filtration cap (default depends on the command).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: Option<u64>,
    /// q-series or product truncation (default depends on the command).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    trunc: Option<u64>,
    /// Memory budget for dense cochain matrices.
    #[arg(long, default_value_t = 256, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_mb: u64,
    #[command(subcommand)]
    command: Command,
}

pub struct Globals {
    pub seed: u64,
    pub max_degree: Option<usize>,
    pub trunc: Option<usize>,
    pub budget_bytes: usize,
}

#[derive(Args)]
struct Coefficients {
    /// Module JSON file over the algebra.
    #[arg(long)]
    module: Option<String>,
    /// One-dimensional trivial module (default).
    #[arg(long, conflicts_with_all = ["module", "adjoint", "coadjoint"])]
    trivial: bool,
    #[arg(long, conflicts_with_all = ["module", "coadjoint"])]
    adjoint: bool,
    #[arg(long, conflicts_with = "module")]
    coadjoint: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate structure files.
    Validate {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        assoc: Option<String>,
    },
    /// Chevalley–Eilenberg cohomology.
    Ce {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        coeff: Coefficients,
        /// Seeded random cochains checked for δ² = 0.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Hochschild cohomology of an associative algebra, or the graded polynomial table.
    Hochschild {
        #[arg(long)]
        assoc: Option<String>,
        /// Compare graded HH of k[x_1..x_n] with polyvector fields.
        #[arg(long)]
        hkr: Option<usize>,
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Spectral sequences of filtered and double complexes.
    Spectral {
        #[command(subcommand)]
        which: SpectralCmd,
    },
    /// Weyl algebra of a Lie algebra, relative to a subalgebra when given.
    Weyl {
        #[arg(long)]
        algebra: String,
        /// Comma-separated basis names spanning the subalgebra.
        #[arg(long)]
        sub: Option<String>,
    },
    /// gl_n invariants in V^{⊗k} ⊗ V*^{⊗l}.
    Invariants {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: Option<usize>,
        /// Also build the bilinear-form invariant of this rank.
        #[arg(long)]
        psi: Option<usize>,
    },
    /// Star products and deformation checks.
    Deform {
        #[command(subcommand)]
        which: DeformCmd,
    },
    /// Characteristic-class series and q-products.
    Genera {
        #[command(subcommand)]
        which: GeneraCmd,
    },
}

#[derive(Subcommand)]
enum SpectralCmd {
    /// Pages of seeded random filtered complexes.
    Pages {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        top: usize,
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value_t = 4)]
        max_page: i64,
    },
    /// Hochschild–Serre spectral sequence.
    Hs {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        sub: String,
        #[command(flatten)]
        coeff: Coefficients,
        #[arg(long, default_value_t = 3)]
        max_page: i64,
    },
    /// Tensor product of two trivial-coefficient cochain complexes.
    Double {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        other: String,
    },
    /// Constraint double complex with the module in degree 0.
    Brst {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        coeff: Coefficients,
    },
}

#[derive(Subcommand)]
enum DeformCmd {
    /// Moyal product relations and associativity.
    Moyal {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        eps: u32,
    },
    /// Gerstenhaber axioms for the Schouten extension of a Lie algebra.
    Gerstenhaber {
        #[arg(long)]
        algebra: String,
    },
    /// First-order deformations from seeded random 2-cochains, or one given cochain.
    FirstOrder {
        #[arg(long)]
        assoc: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Comma-separated coefficients of a single 2-cochain.
        #[arg(long)]
        cochain: Option<String>,
    },
    /// Second-order Maurer–Cartan extension in the toy differential algebra.
    Extend {
        #[arg(long)]
        obstructed: bool,
    },
}

#[derive(Subcommand)]
enum GeneraCmd {
    /// Symmetric and exterior power series with their identities.
    Series {
        /// Chern roots: `;` between roots, `,` between generator coefficients.
        #[arg(long, default_value = "1")]
        roots: String,
        /// Second bundle for sum and difference identities.
        #[arg(long)]
        other: Option<String>,
        #[arg(long, default_value_t = 3)]
        order: u32,
    },
    /// Todd class of a bundle given by Chern roots.
    Todd {
        #[arg(long, default_value = "1")]
        roots: String,
        #[arg(long, default_value_t = 5)]
        order: u32,
    },
    /// Product of symmetric power series over all positive q-powers.
    Tower {
        #[arg(long, default_value = "1")]
        roots: String,
        #[arg(long, default_value_t = 3)]
        order: u32,
    },
    /// Theta-twisted class and its product identity residual.
    UTheta {
        #[arg(long, default_value = "1")]
        roots: String,
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 5)]
        order: u32,
    },
    /// Truncated Patterson–Selberg product with a reference truncation.
    Selberg {
        #[arg(long, default_value = "1")]
        s: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 60)]
        reference: usize,
    },
    /// Residuals of the q-product against Ruelle-type products.
    Probe {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        /// all | 2pi-alternating | 2pi-ratio | 4pi-alternating | 4pi-ratio
        #[arg(long, default_value = "all")]
        convention: String,
    },
    /// Elliptic-genus prototype products.
    Prototype {
        #[arg(long, default_value = "1")]
        roots: String,
        #[arg(long)]
        other: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        sigma: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        xi: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        zeta: String,
        /// pp | ph | hp | hh | all
        #[arg(long, default_value = "all")]
        lattice: String,
        #[arg(long, default_value_t = 3)]
        order: u32,
    },
}

fn dispatch(cmd: &Command, gl: &Globals) -> Result<Outcome, CliError> {
    use Command as C;
    let coeff = |c: &Coefficients| (c.module.clone(), c.adjoint, c.coadjoint);
    match cmd {
        C::Validate { algebra, module, assoc } => algebra::validate(algebra.as_deref(), module.as_deref(), assoc.as_deref()),
        C::Ce { algebra, coeff: c, samples } => {
            let (m, ad, co) = coeff(c);
            algebra::ce(algebra, m.as_deref(), ad, co, *samples, gl)
        }
        C::Hochschild { assoc, hkr, samples } => algebra::hochschild(assoc.as_deref(), *hkr, *samples, gl),
        C::Spectral { which } => match which {
            SpectralCmd::Pages { count, top, max_dim, levels, max_page } => {
                let a = spectral_cmd::PagesArgs { count: *count, top: *top, max_dim: *max_dim, levels: *levels, max_page: *max_page };
                spectral_cmd::pages(&a, gl)
            }
            SpectralCmd::Hs { algebra, sub, coeff: c, max_page } => {
                let (m, ad, co) = coeff(c);
                spectral_cmd::hs(algebra, sub, m.as_deref(), ad, co, *max_page)
            }
            SpectralCmd::Double { algebra, other } => spectral_cmd::double(algebra, other),
            SpectralCmd::Brst { algebra, coeff: c } => {
                let (m, ad, co) = coeff(c);
                spectral_cmd::brst(algebra, m.as_deref(), ad, co)
            }
        },
        C::Weyl { algebra, sub } => weyl_cmd::run(algebra, sub.as_deref(), gl),
        C::Invariants { n, k, l, psi } => weyl_cmd::invariants(*n, *k, *l, *psi),
        C::Deform { which } => match which {
            DeformCmd::Moyal { n, eps } => deform_cmd::moyal_cmd(*n, *eps, gl),
            DeformCmd::Gerstenhaber { algebra } => deform_cmd::gerstenhaber(algebra),
            DeformCmd::FirstOrder { assoc, cochain: Some(f), .. } => deform_cmd::single(assoc, f),
            DeformCmd::FirstOrder { assoc, samples, cochain: None } => deform_cmd::first_order(assoc, *samples, gl),
            DeformCmd::Extend { obstructed } => deform_cmd::extend(*obstructed),
        },
        C::Genera { which } => match which {
            GeneraCmd::Series { roots, other, order } => genera_cmd::series(roots, other.as_deref(), *order, gl),
            GeneraCmd::Todd { roots, order } => genera_cmd::todd_cmd(roots, *order),
            GeneraCmd::Tower { roots, order } => genera_cmd::tower(roots, *order, gl),
            GeneraCmd::UTheta { roots, theta, order } => genera_cmd::u_theta_cmd(roots, *theta, *order),
            GeneraCmd::Selberg { s, alpha, beta, reference } => genera_cmd::selberg(s, *alpha, *beta, *reference, gl),
            GeneraCmd::Probe { tau, ell, eps, convention } => genera_cmd::probe(tau, *ell, *eps, convention, gl),
            GeneraCmd::Prototype { roots, other, sigma, lambda, xi, zeta, lattice, order } => {
                let a = genera_cmd::ProtoArgs { roots, other: other.as_deref(), sigma, lambda, xi, zeta, lattice, order: *order };
                genera_cmd::prototype(&a, gl)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let gl = Globals {
        seed: cli.seed,
        max_degree: cli.max_degree.map(|d| d as usize),
        trunc: cli.trunc.map(|t| t as usize),
        budget_bytes: (cli.budget_mb as usize).saturating_mul(1 << 20),
    };
    let (body, code) = match dispatch(&cli.command, &gl) {
        Ok(Outcome { mut report, ok }) => {
            if let Value::Object(m) = &mut report {
                m.insert("status".into(), Value::from(if ok { "ok" } else { "failed" }));
            }
            (report, if ok { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("hwb: {e}");
            (e.to_json(), e.exit_code())
        }
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(render(&body, cli.format).as_bytes()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
