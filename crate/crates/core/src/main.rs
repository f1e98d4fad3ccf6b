use std::process::ExitCode;

use clap::Parser;
use facetwise::cli::{run, Cli};

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("FW_THREADS") {
        let threads: usize = v
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("FW_THREADS must be a positive integer, got {v:?}"))?;
        if threads == 0 {
            anyhow::bail!("FW_THREADS must be a positive integer, got 0");
        }
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = configure_threads().and_then(|_| run(&cli));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
