use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use toroidalg::runner::{self, Command, CosetList, Fraction, RunConfig, Setup};
use toroidalg::vertexrep::Assembly;

#[derive(Parser)]
#[command(name = "toroidalg", version, about = "Exact checks for twisted toroidal and extended affine Lie algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structure constants, gradings, toroidal Jacobi, tau values, invariant Cartan.
    VerifyAlgebra(Common),
    /// TKK algebra against the twisted multiloop algebra.
    VerifyTkk(Common),
    /// Factor the induced root-system automorphism.
    Factorize(Common),
    /// Vertex representation: commutators, thin covering, orbit proxy.
    VerifyRep(Common),
    /// Every suite above.
    All(Common),
    /// `tkk --cosets "(0,0),(0,1),(1,0)" verify`
    Tkk {
        #[arg(long)]
        cosets: String,
        #[arg(value_parser = ["verify"])]
        action: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `affine factorize --example baby-tkk`
    Affine {
        #[arg(value_parser = ["factorize"])]
        action: String,
        #[arg(long)]
        example: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the algebra as JSON (labels, structure constants, form).
    ExportAlgebra(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long, conflicts_with = "config")]
    example: Option<String>,
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    depth: Option<i64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// `mu,nu`, e.g. `1,0` or `1/2,0`.
    #[arg(long)]
    cocycle: Option<String>,
    #[arg(long)]
    level: Option<String>,
    #[arg(long, value_parser = ["toroidal", "eala"])]
    assembly: Option<String>,
}

impl Common {
    fn config(&self) -> Result<(RunConfig, Option<PathBuf>), String> {
        let mut cfg = match (&self.example, &self.config) {
            (_, Some(p)) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                RunConfig::from_json(&text).map_err(|e| e.to_string())?
            }
            (Some(e), None) => RunConfig::example(e),
            (None, None) => return Err("need --example or --config".into()),
        };
        if let Some(d) = self.depth {
            cfg.depth = Some(d);
        }
        if let Some(s) = self.seed {
            cfg.seed = Some(s);
        }
        if let Some(c) = &self.cocycle {
            let parts: Vec<&str> = c.split(',').map(str::trim).collect();
            let [mu, nu] = parts[..] else {
                return Err(format!("--cocycle wants mu,nu, got {c:?}"));
            };
            cfg.mu = Some(Fraction::Text(mu.into()));
            cfg.nu = Some(Fraction::Text(nu.into()));
        }
        if let Some(l) = &self.level {
            cfg.level_c = Some(Fraction::Text(l.clone()));
        }
        if let Some(a) = &self.assembly {
            cfg.assembly = Some(if a == "eala" { Assembly::Eala } else { Assembly::Toroidal });
        }
        let out = self.out.clone().or_else(|| cfg.out.clone().map(PathBuf::from));
        Ok((cfg, out))
    }
}

fn emit(report: &runner::Report, out: Option<PathBuf>) -> ExitCode {
    let text = runner::render(&report.value);
    match out {
        Some(p) => {
            if let Err(e) = runner::write_atomic(&p, &text) {
                eprintln!("cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
            let status = if report.passed { "passed" } else { "FAILED" };
            eprintln!("{status}; report written to {}", p.display());
        }
        None => print!("{text}"),
    }
    if let Some(err) = report.value.get("error") {
        eprintln!("error: {}", err["message"].as_str().unwrap_or("unknown"));
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usage_error(msg: String) -> ExitCode {
    let v = json!({"schema": runner::SCHEMA, "passed": false, "error": {"kind": "config", "message": msg}});
    print!("{}", runner::render(&v));
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, common) = match cli.cmd {
        Cmd::VerifyAlgebra(c) => (Command::VerifyAlgebra, c),
        Cmd::VerifyTkk(c) => (Command::VerifyTkk, c),
        Cmd::Factorize(c) => (Command::Factorize, c),
        Cmd::VerifyRep(c) => (Command::VerifyRep, c),
        Cmd::All(c) => (Command::All, c),
        Cmd::Tkk { cosets, out, .. } => {
            let cfg = RunConfig { example: Some("custom".into()), cosets: Some(CosetList::Text(cosets)), ..Default::default() };
            return emit(&runner::run(&cfg, Command::VerifyTkk), out);
        }
        Cmd::Affine { example, out, .. } => {
            return emit(&runner::run(&RunConfig::example(&example), Command::Factorize), out);
        }
        Cmd::ExportAlgebra(c) => {
            let (cfg, out) = match c.config() {
                Ok(x) => x,
                Err(e) => return usage_error(e),
            };
            let setup = match Setup::resolve(&cfg) {
                Ok(s) => s,
                Err(e) => return usage_error(e.to_string()),
            };
            let v = json!({"schema": runner::SCHEMA, "algebra": setup.algebra.to_json()});
            return emit(&runner::Report { value: v, passed: true }, out);
        }
    };
    match common.config() {
        Ok((cfg, out)) => emit(&runner::run(&cfg, cmd), out),
        Err(e) => usage_error(e),
    }
}
