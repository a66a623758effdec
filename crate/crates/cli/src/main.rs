mod args;
mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use crate::report::Exit;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version are successful exits; everything else is usage
            let code = if e.use_stderr() { Exit::Usage } else { Exit::Ok };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };

    let mut report = commands::report_for(&cli.command);
    let outcome = commands::run(&cli.command, &mut report);
    let exit = match &outcome {
        Ok(()) => report.exit,
        Err(e) => e.exit(),
    };

    let mut stdout = std::io::stdout().lock();
    if cli.json {
        let mut value = report.to_json();
        if let Err(e) = &outcome {
            value["results"] = json!({ "error": e.to_json() });
        }
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&value).expect("json values serialize"));
    } else {
        match &outcome {
            Ok(()) => {
                let _ = write!(stdout, "{}", report.render_text());
            }
            Err(e) => {
                eprintln!("error: {}", e.message());
            }
        }
    }
    ExitCode::from(exit as u8)
}
