mod cli;
mod commands;
mod error;

use std::io::Write;

use clap::Parser;
use wedgecalc::BbcgOptions;

use cli::{Cli, Command, Format};
use commands::Report;
use error::CliError;

fn main() {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = match cli.format {
                Format::Text => write!(out, "{}", report.text),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("json output")),
            };
            let _ = out.flush();
            std::process::exit(report.exit);
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("{e}"),
                Format::Json => eprintln!("{}", serde_json::to_string_pretty(&e.to_json()).expect("json error")),
            }
            std::process::exit(e.exit_code());
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::CheckShifted { input, order, search } => commands::check_shifted(input, order.as_deref(), search),
        Command::Decompose {
            input,
            trace,
            check_bbcg,
            search,
        } => commands::decompose_cmd(input, *trace, *check_bbcg, search),
        Command::Bbcg {
            input,
            show_subcomplexes,
            assume_shifted,
            max_vertices,
            max_perms,
        } => commands::bbcg_cmd(
            input,
            *show_subcomplexes,
            BbcgOptions {
                max_vertices: *max_vertices,
                assume_shifted: *assume_shifted,
                perm_limit: *max_perms,
                keep_profiles: false,
            },
        ),
        Command::Homology { input } => commands::homology(input),
        Command::GlueDecompose {
            left,
            right,
            tau,
            trace,
            max_perms,
        } => commands::glue(left, right, tau, *trace, *max_perms),
        Command::WedgeDecompose {
            input,
            copies,
            max_perms,
        } => commands::wedge(input, copies, *max_perms),
        Command::Skeleton { n, k } => commands::skeleton(*n, *k),
        Command::MomentAngle {
            input,
            suspended_only_ack,
            max_perms,
        } => commands::moment_angle_cmd(input, *suspended_only_ack, *max_perms),
        Command::Specialize { input, dims, max_perms } => commands::specialize_cmd(input, dims, *max_perms),
        Command::Verify { max_n } => commands::verify(*max_n),
    }
}
