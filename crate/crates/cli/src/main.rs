mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::{MirrorArgs, Usage};

fn configure_threads() -> Result<(), Usage> {
    let Ok(raw) = std::env::var("SYZKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Usage(format!(
            "SYZKIT_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn run(cli: Cli) -> Result<(output::Report, Format), Usage> {
    configure_threads()?;
    let g = cli.global;
    if g.tolerance.is_nan() || g.tolerance <= 0.0 {
        return Err(Usage(format!(
            "--tolerance must be positive, got {}",
            g.tolerance
        )));
    }
    let mut format = g.format;
    let report = match cli.command {
        Command::Classify { rays, input } => commands::classify_cmd(rays, input)?,
        Command::Invariants { m, l, max_degree } => commands::invariants_cmd(m, l, max_degree)?,
        Command::Verify { m_max, mutate } => commands::verify_cmd(m_max, &mutate, format)?,
        Command::Periods { m, q, l } => commands::periods_cmd(&g, m, q, l)?,
        Command::MirrorMap {
            m,
            q,
            coefficients,
            invert,
            sweep,
            csv,
        } => {
            if csv {
                format = Format::Csv;
            }
            commands::mirror_map_cmd(
                &g,
                MirrorArgs {
                    m,
                    q,
                    coefficients,
                    invert,
                    sweep,
                },
            )?
        }
        Command::CheckAll { m_max } => commands::check_all_cmd(&g, m_max)?,
    };
    Ok((report, format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok((report, format)) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = output::emit(&report, format, &mut out).and_then(|_| out.flush()) {
                eprintln!("syzkit: {e}");
                return ExitCode::from(1);
            }
            match report.pass {
                Some(false) => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Usage(msg)) => {
            eprintln!("syzkit: {msg}");
            ExitCode::from(1)
        }
    }
}
