mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commands::Output;

#[derive(Parser, Debug)]
#[command(name = "chevalley", version, about = "Exact computations with classical matrix groups")]
struct Cli {
    /// Emit one JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficient field: q, fp:P, ratfn:P, etale:<base>:<a>.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FamilyArg {
    Gl,
    Sl,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum QuatAction {
    /// Conic search and agreement of the five constructions.
    Split,
    /// Products of the basis 1, i, j, ij.
    Table,
    /// Images of the basis in 2x2 matrices over k[α], α² = a.
    Embed,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order of GL_n(F_q) or SL_n(F_q).
    Order {
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// Divide by the center (PGL_n or PSL_n).
        #[arg(long)]
        projective: bool,
    },
    /// Number of r-dimensional subspaces of F_q^n.
    Grassmann {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: u64,
    },
    /// Number of Sylow p-subgroups of GL_n(F_p).
    Sylow {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Conjugacy classes of GL_n(F_q) or SL_n(F_q) by enumeration.
    Classes {
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Centralizer and normalizer orders of a block-scalar torus in GL_n(F_q).
    Centralizer {
        /// Block sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        partition: Vec<usize>,
        #[arg(long)]
        q: u64,
    },
    /// Word in elementary matrices for a determinant-one matrix.
    Decompose {
        #[arg(long)]
        matrix: String,
        /// Row-reduce with x/n/h generators to diag(1,...,1,det) instead.
        #[arg(long)]
        gauss: bool,
    },
    /// Bruhat decomposition M = b1 P_w b2.
    Bruhat {
        #[arg(long)]
        matrix: String,
    },
    /// Jordan-Chevalley decomposition.
    Jordan {
        #[arg(long)]
        matrix: String,
    },
    /// Symplectic and orthogonal forms and their Lie algebras.
    Classical {
        /// sp, soeven or soodd.
        #[arg(long, default_value = "sp")]
        family: String,
        #[arg(long)]
        l: usize,
        /// Test a matrix for membership and report its similitude factor.
        #[arg(long, alias = "check")]
        member: Option<String>,
    },
    /// Root datum, Weyl group order and Cartan matrix.
    Rootdatum {
        /// sl2, pgl2, gl, sp, soeven, soodd.
        #[arg(long = "type")]
        ty: String,
        /// Matrix size for gl, rank for sp/soeven/soodd.
        #[arg(long, alias = "l")]
        n: Option<usize>,
    },
    /// Quaternion algebra (a,b): splitting, multiplication table or 2x2 embedding.
    Quat {
        #[arg(value_enum, default_value = "split")]
        action: QuatAction,
        /// Base field; overrides --field.
        #[arg(long)]
        base: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Height bound for the conic search over Q.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Writes n as a sum of four squares.
    Foursquare { n: u64 },
    /// SL_2(Z): words in S and U, and reduction to the fundamental domain.
    Sl2z {
        #[command(subcommand)]
        action: Sl2zAction,
    },
    /// Iwasawa decomposition A = P S of a real matrix.
    Iwasawa {
        #[arg(long)]
        matrix: String,
    },
    /// The five Platonic solids.
    Platonic,
    /// Trace form and regular representation of a quadratic extension.
    Tracefield {
        /// Element whose multiplication matrix is printed.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Sl2zAction {
    /// Writes a matrix as ±S U^k1 S U^k2 ...
    Decompose {
        #[arg(long)]
        matrix: String,
    },
    /// Moves x + iy into |x| <= 1/2, |z| >= 1.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Checks S^2 = (SU)^3 = -I and the free-product normal form.
    Relations,
}

const SUBCOMMANDS: [&str; 16] = [
    "order",
    "grassmann",
    "sylow",
    "classes",
    "centralizer",
    "decompose",
    "bruhat",
    "jordan",
    "classical",
    "rootdatum",
    "quat",
    "foursquare",
    "sl2z",
    "iwasawa",
    "platonic",
    "tracefield",
];

fn error_envelope(command: &str, code: &str, message: &str) -> Value {
    json!({ "command": command, "status": "error", "error": { "code": code, "message": message } })
}

/// Prints a line, ignoring a closed stdout.
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout(), "{line}");
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let json_mode = args.iter().any(|a| a == "--json");
    let guessed = args.iter().skip(1).find(|a| SUBCOMMANDS.contains(&a.as_str())).cloned().unwrap_or_default();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            if json_mode {
                let rendered = e.to_string();
                let message = rendered
                    .lines()
                    .take_while(|l| !l.starts_with("Usage:"))
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .collect::<Vec<_>>()
                    .join(" ");
                emit(&error_envelope(&guessed, "usage_error", message.trim_start_matches("error: ")).to_string());
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    let name = commands::name(&cli.command);
    match commands::run(&cli.command, &cli.field) {
        Ok(Output { payload, text }) => {
            if cli.json {
                emit(&json!({ "command": name, "status": "ok", "payload": payload }).to_string());
            } else {
                emit(&text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                emit(&error_envelope(name, e.code(), &e.to_string()).to_string());
            } else {
                eprintln!("error[{}]: {e}", e.code());
            }
            ExitCode::from(1)
        }
    }
}
