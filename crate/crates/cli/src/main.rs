use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gyrogeom_cli::{emit, execute, parse_scene, render_svg, Overrides};

/// Evaluate a gyrotriangle scene and report results as JSON.
#[derive(Parser, Debug)]
#[command(name = "gyrogeom", version)]
struct Args {
    /// Scene file (default: stdin)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Results file (default: stdout)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write an SVG drawing of the scene
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Override the ball radius s
    #[arg(long)]
    s: Option<f64>,
    /// Override the relative tolerance
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gyrogeom: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(args: &Args) -> io::Result<ExitCode> {
    let text = match &args.input {
        Some(path) => fs::read_to_string(path)?,
        None => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    let scene = match parse_scene(&text, Overrides { s: args.s, tol: args.tol }) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}", serde_json::to_string_pretty(&e.to_json()).expect("plain strings"));
            return Ok(ExitCode::from(2));
        }
    };
    let results = execute(&scene);
    let out = emit(&results);
    match &args.output {
        Some(path) => fs::write(path, out)?,
        None => io::stdout().write_all(out.as_bytes())?,
    }
    if let Some(path) = &args.svg {
        match render_svg(&scene, &results) {
            Ok(svg) => fs::write(path, svg)?,
            // the results are already written; the drawing is extra
            Err(e) => eprintln!("gyrogeom: {e}"),
        }
    }
    Ok(ExitCode::SUCCESS)
}
