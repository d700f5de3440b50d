use clap::{Parser, Subcommand};
use kahler_lab::{exit_code, lab_catalog, plot::plot_run, render_table, run_scenario, verify, ScenarioConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kahler-lab", version, about = "Chern-Ricci flow experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one scenario file.
    Run {
        config: PathBuf,
        #[arg(long, env = "KAHLER_LAB_OUT", default_value = "runs")]
        out: PathBuf,
    },
    /// Run every scenario of a manifest and write the verification table.
    Verify {
        manifest: PathBuf,
        #[arg(long, env = "KAHLER_LAB_OUT", default_value = "runs")]
        out: PathBuf,
    },
    /// Print catalog metric keys and conformal factors.
    ListMetrics,
    /// Render SVG charts for a run directory.
    Plot { run_dir: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Run { config, out } => match ScenarioConfig::load(&config).map_err(Into::into).and_then(|c| run_scenario(&c, &out)) {
            Ok(r) => {
                for c in &r.checks {
                    println!("{:<24} {:?} worst slack {:.3e}", c.name, c.verdict, c.worst_slack);
                }
                if let Some(b) = &r.breakdown {
                    eprintln!("breakdown in {} stage: {}", b.stage, b.message);
                }
                println!("{} in {:.2}s -> {}", if r.passed { "passed" } else { "failed" }, r.wall_time_s, out.join(r.config.output_dir()).display());
                exit_code(&r)
            }
            Err(e) => {
                eprintln!("error: {e}");
                if e.is_config() {
                    2
                } else {
                    4
                }
            }
        },
        Cmd::Verify { manifest, out } => match verify(&manifest, &out) {
            Ok(v) => {
                for w in &v.warnings {
                    eprintln!("warning: {w}");
                }
                for e in &v.config_errors {
                    eprintln!("error: {e}");
                }
                print!("{}", render_table(&v));
                v.exit_code
            }
            Err(e) => {
                eprintln!("error: {e}");
                if e.is_config() {
                    2
                } else {
                    4
                }
            }
        },
        Cmd::ListMetrics => {
            let c = lab_catalog();
            println!("metrics:");
            for name in c.metric_names() {
                let e = c.metric_entry(&name).unwrap();
                println!("  {name:<22} {}", e.description);
            }
            println!("conformal factors (use conformal:<metric>:<factor>):");
            for name in c.factor_names() {
                println!("  {name:<22} {}", c.factor_entry(&name).unwrap().description);
            }
            0
        }
        Cmd::Plot { run_dir } => match plot_run(&run_dir) {
            Ok(files) => {
                for f in files {
                    println!("{}", f.display());
                }
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
    };
    ExitCode::from(code as u8)
}
