//! Command-line driver.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::equilibrium::{long_run_ge, short_run_ge};
use crate::error::{Error, Result};
use crate::graph::{BigPicture, NodeId};
use crate::params::Params;
use crate::plot::render_svg;
use crate::scenario::{self, Overlay, Scenario, Viewport};
use crate::state::EconState;

#[derive(Debug, Parser)]
#[command(
    name = "macroatlas",
    version,
    about = "Big-picture macroeconomic diagram engine"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OverlayArg {
    Baseline,
    Current,
    Both,
}

impl From<OverlayArg> for Overlay {
    fn from(o: OverlayArg) -> Overlay {
        match o {
            OverlayArg::Baseline => Overlay::Baseline,
            OverlayArg::Current => Overlay::Current,
            OverlayArg::Both => Overlay::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the short-run and long-run general equilibrium.
    Solve {
        /// Parameter file (TOML, or JSON when the extension is .json). Defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Change one parameter and show the effect and the diagrams it reaches.
    Shock {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the diagram graph as Graphviz or JSON.
    ExportGraph {
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render one diagram as SVG.
    Plot {
        #[arg(long)]
        node: NodeId,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "current")]
        overlay: OverlayArg,
        /// Optional shock drawn against the unshocked baseline.
        #[arg(long, requires = "value")]
        field: Option<String>,
        #[arg(long, requires = "field", allow_hyphen_values = true)]
        value: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        xmin: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        xmax: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        ymin: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        ymax: Option<f64>,
    },
    /// Serve the scenario HTTP/JSON API.
    Serve {
        #[arg(long, env = scenario::ADDR_ENV, default_value = scenario::DEFAULT_ADDR)]
        addr: String,
        #[arg(long, env = scenario::DATA_ENV, default_value = scenario::DEFAULT_DATA_DIR)]
        data: PathBuf,
    },
}

fn load(config: Option<&Path>) -> Result<Params> {
    match config {
        Some(path) => Params::load(path),
        None => Ok(Params::default()),
    }
}

fn parse_value(field: &str, text: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| Error::validation(field, format!("value {text:?} is not a number")))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_text(value: &impl serde::Serialize) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn state_table(headers: [&str; 2], a: &EconState, b: &EconState, delta: bool) -> String {
    let mut text = format!("{:<8} {:>16} {:>16}", "", headers[0], headers[1]);
    if delta {
        text.push_str(&format!(" {:>16}", "change"));
    }
    text.push('\n');
    for field in EconState::FIELDS {
        let (x, y) = (
            a.get(field).unwrap_or(f64::NAN),
            b.get(field).unwrap_or(f64::NAN),
        );
        text.push_str(&format!("{field:<8} {x:>16.6} {y:>16.6}"));
        if delta {
            text.push_str(&format!(" {:>+16.6}", y - x));
        }
        text.push('\n');
    }
    text
}

/// Runs one command, writing results to `out` unless `--out` names a file.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Solve {
            config,
            json,
            out: path,
        } => {
            let params = load(config.as_deref())?;
            let short = short_run_ge(&params)?;
            let long = long_run_ge(&params)?;
            let text = if json {
                json_text(&json!({ "shortRun": short, "longRun": long }))?
            } else {
                let mut t = state_table(["short run", "long run"], &short, &long, false);
                t.push_str(&format!(
                    "\nlong-run output equals full-employment output: {}\n",
                    (long.output - long.full_employment_output).abs()
                        <= 1e-8 * long.full_employment_output
                ));
                t
            };
            emit(out, path.as_deref(), &text)
        }
        Command::Shock {
            config,
            field,
            value,
            json,
            out: path,
        } => {
            let params = load(config.as_deref())?;
            let value = parse_value(&field, &value)?;
            let before = Scenario::new("cli", params)?;
            let (after, plan) = before.shocked(&field, value, 0)?;
            let graph = BigPicture::canonical();
            let names = plan
                .dirty
                .iter()
                .map(|&id| Ok(graph.node(id)?.name.clone()))
                .collect::<Result<Vec<_>>>()?;
            let text = if json {
                json_text(&json!({
                    "field": field,
                    "oldValue": before.params.get(&field),
                    "newValue": value,
                    "before": before.current,
                    "after": after.current,
                    "plan": plan,
                    "dirtyNames": names,
                }))?
            } else {
                let mut t = format!(
                    "shock {field}: {} -> {value}\n\n",
                    before.params.get(&field).unwrap_or(f64::NAN)
                );
                t.push_str(&state_table(
                    ["before", "after"],
                    &before.current,
                    &after.current,
                    true,
                ));
                t.push_str("\ndiagrams to redraw, in order:\n");
                for (id, name) in plan.dirty.iter().zip(&names) {
                    t.push_str(&format!("{id:>4}  {name}\n"));
                }
                t
            };
            emit(out, path.as_deref(), &text)
        }
        Command::ExportGraph { format, out: path } => {
            let graph = BigPicture::canonical();
            let text = match format {
                GraphFormat::Dot => graph.to_dot(),
                GraphFormat::Json => graph.to_json(),
            };
            emit(out, path.as_deref(), &text)
        }
        Command::Plot {
            node,
            out: path,
            config,
            overlay,
            field,
            value,
            xmin,
            xmax,
            ymin,
            ymax,
        } => {
            let params = load(config.as_deref())?;
            let mut scenario = Scenario::new("cli", params)?;
            if let (Some(field), Some(value)) = (field, value) {
                let value = parse_value(&field, &value)?;
                scenario = scenario.shocked(&field, value, 0)?.0;
            }
            let viewport = Viewport {
                xmin,
                xmax,
                ymin,
                ymax,
            };
            let panel = scenario.panel(node, overlay.into(), viewport)?;
            emit(out, path.as_deref(), &render_svg(&panel, viewport)?)
        }
        Command::Serve { addr, data } => {
            let addr = addr
                .parse()
                .map_err(|_| Error::Config(format!("bad listen address {addr:?}")))?;
            let runtime = tokio::runtime::Builder::new_multi_thread()
                .enable_all()
                .build()?;
            writeln!(
                out,
                "listening on http://{addr}, data in {}",
                data.display()
            )?;
            runtime.block_on(scenario::serve(addr, data))
        }
    }
}
