//! `hopfcone`: exact computations and checks, reported as JSON.
//!
//! Exit status is 0 on success, 1 when a check fails and 2 on a usage error.

mod commands;
mod parse;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use hopfcone::sampling::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "hopfcone", version, about = "Combinatorial Hopf algebras, cone characters and Lie idempotents")]
pub struct Cli {
    /// Print a human-readable rendering instead of compact JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Degree cap for grouplike and primitive predicates.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_degree: usize,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Random seed for sampled checks.
    #[arg(long, global = true, env = "HOPFCONE_SEED")]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Sym,
    Qsym,
    Wqsym,
    Fqsym,
    Mqsym,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Power sums of the first kind.
    Psi,
    /// Power sums of the second kind.
    Phi,
    /// Complete functions S_n.
    Complete,
    /// Elementary functions Lambda_n.
    Elementary,
    /// The canonical alien operator Delta_n.
    Canonical,
}

#[derive(Args, Debug)]
pub struct MulArgs {
    #[arg(long, value_enum, default_value = "sym")]
    pub algebra: Algebra,
    /// Basis of the operands and of the result.
    #[arg(long, default_value = "R")]
    pub basis: String,
    /// First factor: `label` or `label:coeff` terms separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Args, Debug)]
pub struct ComulArgs {
    #[arg(long, value_enum, default_value = "sym")]
    pub algebra: Algebra,
    #[arg(long, default_value = "R")]
    pub basis: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[arg(long, value_enum, default_value = "sym")]
    pub algebra: Algebra,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
}

#[derive(Args, Debug)]
pub struct StatArgs {
    /// gaussian, uniform, catalan_mixture or catalan_mixture(a,b)
    #[arg(long, default_value = "gaussian")]
    pub density: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 16)]
    pub shards: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand a named element of Sym.
    Expand {
        #[arg(long, value_enum)]
        what: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "R")]
        basis: String,
    },
    /// Product of two elements.
    Mul(MulArgs),
    /// Coproduct of an element.
    Comul(ComulArgs),
    /// Change of basis.
    Convert(ConvertArgs),
    /// Internal (descent algebra) product in Sym.
    InternalMul {
        #[arg(long, default_value = "R")]
        basis: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Certify primitivity, commutative image p_n/n and internal idempotency.
    LieCheck {
        #[arg(long, default_value = "R")]
        basis: String,
        /// Element to certify; alternatively use --what and --n.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "what")]
        x: Option<String>,
        #[arg(long, value_enum, requires = "n")]
        what: Option<Family>,
        #[arg(long)]
        n: Option<usize>,
        /// Skip the internal idempotency test.
        #[arg(long)]
        no_idempotency: bool,
    },
    /// The q-deformed Eulerian idempotent phi_n(q).
    EulerIdempotent {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        certify: bool,
    },
    /// Image of an alien operator: plus:n, minus:n or canonical:n.
    Alien {
        #[arg(long)]
        op: String,
        #[arg(long)]
        basis: Option<String>,
    },
    /// The Catalan element D^n with coefficients in Q[a, b].
    Catalan {
        #[arg(long)]
        n: usize,
        /// Also print the table ca_1 .. ca_n.
        #[arg(long)]
        table: bool,
    },
    /// The normalized Catalan Lie idempotent at a = a0, b = b0.
    CatalanIdempotent {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Indicator product identity for two cones on an integer box.
    ConeCheck {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long = "box", default_value_t = 6)]
        bound: i64,
        #[arg(long, default_value = "K")]
        basis: String,
    },
    /// Product identity for multiset composition cones at random points.
    MultisetConeCheck {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Integer point transform of C_u truncated to a box.
    Ipt {
        #[arg(long)]
        u: String,
        /// Check the star product with F_v on the box.
        #[arg(long)]
        v: Option<String>,
        #[arg(long = "box", default_value_t = 4)]
        bound: i64,
        /// Boundary margin for the star product check (default |u| + |v|).
        #[arg(long)]
        margin: Option<i64>,
    },
    /// Star product of the rational functions f_u, f_v at exact random points.
    RationalStarCheck {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Evaluate the rational mould M_u, or check M_u * M_v with --v.
    MouldEval {
        #[arg(long)]
        u: String,
        /// Point as z1=3,z2=5,...
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Partial composition M_u o_k M_v.
    Operad {
        #[arg(long)]
        u: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Tree mould of a reduced plane tree, checked against its fiber sum.
    TreeMould {
        #[arg(long)]
        tree: String,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Tridendriform split of M_u M_v, its operator forms, and the axioms with --w.
    TridendriformCheck {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: Option<String>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Rota-Baxter relation on random finitely supported sequences.
    RbCheck {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        support: i64,
    },
    /// Character property of C and the bridge series into Sym.
    TensorCharacterCheck {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        support: i64,
    },
    /// Monte Carlo estimate of m^e for a sign sequence.
    McWeight {
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        #[command(flatten)]
        stat: StatArgs,
    },
    /// Character property chi(M_I) chi(M_J) = chi(M_I M_J), estimated.
    McCharacter {
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[command(flatten)]
        stat: StatArgs,
    },
    /// m^{e+} + m^{e-} = m^e, estimated on shared walks.
    Consistency {
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        #[command(flatten)]
        stat: StatArgs,
    },
    /// First ladder epoch probabilities against 1 - sqrt(1 - s).
    SparreAndersen {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[command(flatten)]
        stat: StatArgs,
    },
    /// Run every worked example.
    Selftest,
}

/// Result of a subcommand: the JSON document, an optional text rendering and
/// whether the checks it ran passed.
pub struct Report {
    pub json: Value,
    pub text: Option<String>,
    pub pass: bool,
}

impl Report {
    pub fn ok(json: Value) -> Self {
        Report {
            json,
            text: None,
            pass: true,
        }
    }

    pub fn check(json: Value, pass: bool) -> Self {
        Report { json, text: None, pass }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            // help and version requests exit 0, everything else is a usage error
            return ExitCode::from(if code == 0 { 0 } else { 2 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("{}", serde_json::json!({"error": e.to_string()}));
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(report) => {
            if cli.pretty {
                match &report.text {
                    Some(t) => println!("{t}"),
                    None => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
                }
            } else {
                println!("{}", report.json);
            }
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({"error": e.to_string()}));
            ExitCode::from(2)
        }
    }
}
