use clap::Parser;

use purecubic_cli::args::Cli;
use purecubic_cli::output;
use purecubic_cli::report::{Report, Status};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let report = match purecubic_cli::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            if cli.global.json {
                let mut r = Report::new("error", serde_json::Value::Null);
                r.status = Status::Error;
                r.notes.push(e.to_string());
                if let Ok(s) = output::json(&r) {
                    println!("{s}");
                }
            }
            std::process::exit(2);
        }
    };
    let rendered = if cli.global.json {
        output::json(&report).map(|s| s + "\n")
    } else if cli.global.csv {
        output::csv(&report)
    } else {
        Ok(output::text(&report))
    };
    match rendered {
        Ok(s) => print!("{s}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
    std::process::exit(report.status.exit_code());
}
