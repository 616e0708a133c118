//! The `tilegeo` command line: solvers, the reduction, the equivalence
//! harness, instance generation, rendering and gadget checks.

pub mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use tilegeo::gadgets::{builtin_catalog, check_contract, parse_gadget, GadgetError, GadgetSpec};
use tilegeo::gg::{
    generate, generate_sized, gg_solve, parse_instance, write_instance, GeoInstance, GeoPosition, GgError, GgLimits,
};
use tilegeo::layout::area_report;
use tilegeo::reduce::{reduce, verify_equivalence, VerifyLimits};
use tilegeo::tt::{parse_board, solve, write_board, SolveLimits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Environment variable that caps the default Turning Tiles node budget.
pub const MAX_NODES_VAR: &str = "TT_MAX_NODES";

#[derive(Debug, Parser)]
#[command(name = "tilegeo", version, about = "Turning Tiles and Generalized Geography toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a Turning Tiles board.
    SolveTt {
        file: PathBuf,
        /// Also print the principal line.
        #[arg(long)]
        pv: bool,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Solve a Geography instance from its start vertex.
    SolveGg {
        file: PathBuf,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Compile a Geography instance into a Turning Tiles board.
    Reduce {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Print board size statistics as key<TAB>value lines.
        #[arg(long)]
        area_report: bool,
    },
    /// Check that both games agree on every instance of a corpus.
    Verify {
        /// Directory of `.gg` files.
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        corpus: Option<PathBuf>,
        /// Use generated instances instead of a directory.
        #[arg(long, requires_all = ["count", "max_vertices"])]
        random: bool,
        #[arg(long)]
        count: Option<u64>,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Write a random strict instance with exactly the given vertex count.
    Gen {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Print a board as text, or write it as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the gadget contract harness on the builtin catalog or a file.
    GadgetCheck {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Limit(String),
    Usage(String),
    /// The result was printed; only the exit code remains.
    Silent(i32),
}

type Outcome = Result<(), Failure>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    env_max_nodes: Option<u64>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<GeoInstance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

macro_rules! say {
    ($w:expr, $($arg:tt)*) => {
        let _ = writeln!($w, $($arg)*);
    };
}

impl Io<'_> {
    fn tt_limits(&self, flag: Option<u64>) -> SolveLimits {
        SolveLimits::nodes(flag.or(self.env_max_nodes).unwrap_or(SolveLimits::default().max_nodes))
    }

    fn solve_tt(&mut self, file: &Path, pv: bool, max_nodes: Option<u64>) -> Outcome {
        let board = parse_board(&read(file)?).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
        let limits = self.tt_limits(max_nodes);
        let r = solve(&board, &limits);
        let Some(winner) = r.winner else {
            return Err(Failure::Limit(format!("node limit of {} reached", limits.max_nodes)));
        };
        say!(self.out, "winner {winner}");
        if pv {
            let line: Vec<String> = r
                .principal_line
                .unwrap_or_default()
                .iter()
                .map(|m| m.to_string())
                .collect();
            say!(self.out, "pv {}", line.join(" "));
        }
        say!(self.out, "nodes {}", r.nodes_expanded);
        Ok(())
    }

    fn solve_gg(&mut self, file: &Path, max_nodes: Option<u64>) -> Outcome {
        let g = load_instance(file)?;
        let mut limits = GgLimits::default();
        if let Some(n) = max_nodes {
            limits.max_nodes = n;
        }
        let r = GeoPosition::start(&g)
            .and_then(|p| gg_solve(&p, &limits))
            .map_err(|e| match e {
                GgError::ResourceExhausted(m) => Failure::Limit(m),
                other => Failure::Input(other.to_string()),
            })?;
        say!(self.out, "winner {}", r.winner);
        let line: Vec<&str> = r.principal_line.iter().map(|&v| g.name(v)).collect();
        say!(self.out, "line {}", line.join(" "));
        say!(self.out, "nodes {}", r.nodes_expanded);
        Ok(())
    }

    fn reduce(&mut self, file: &Path, output: &Path, report: bool) -> Outcome {
        let g = load_instance(file)?;
        let trace = reduce(&g).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
        write_file(output, &write_board(&trace.board))?;
        if report {
            let _ = write!(self.out, "{}", area_report(&trace.plan, &trace.board));
        }
        Ok(())
    }

    fn verify(
        &mut self,
        corpus: Option<&Path>,
        count: Option<u64>,
        max_vertices: Option<usize>,
        seed: u64,
        max_nodes: Option<u64>,
    ) -> Outcome {
        let instances: Vec<(String, GeoInstance)> = match corpus {
            Some(dir) => {
                let mut files: Vec<PathBuf> = fs::read_dir(dir)
                    .map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "gg"))
                    .collect();
                files.sort();
                files
                    .iter()
                    .map(|p| {
                        let id = p
                            .file_stem()
                            .map(|s| s.to_string_lossy().into_owned())
                            .unwrap_or_default();
                        load_instance(p).map(|g| (id, g))
                    })
                    .collect::<Result<_, _>>()?
            }
            None => {
                let (count, max_vertices) = (count.unwrap_or(0), max_vertices.unwrap_or(0));
                say!(self.err, "seed {seed}");
                (seed..seed + count)
                    .map(|s| {
                        generate(max_vertices, s)
                            .map(|g| (format!("seed-{s:06}"), g))
                            .map_err(|e| Failure::Usage(e.to_string()))
                    })
                    .collect::<Result<_, _>>()?
            }
        };
        let limits = VerifyLimits {
            tt: self.tt_limits(max_nodes),
            gg: GgLimits::default(),
        };
        let report = verify_equivalence(&instances, &limits);
        say!(self.out, "{report}");
        if !report.all_match() {
            for r in report.mismatches() {
                say!(self.err, "mismatch on {}", r.id);
            }
            return Err(Failure::Silent(EXIT_FAILURE));
        }
        if report.exhausted() > 0 {
            return Err(Failure::Silent(EXIT_LIMIT));
        }
        Ok(())
    }

    fn gen(&mut self, vertices: usize, seed: u64, output: &Path) -> Outcome {
        say!(self.err, "seed {seed}");
        let g = generate_sized(vertices, seed).map_err(|e| Failure::Usage(e.to_string()))?;
        write_file(output, &write_instance(&g))
    }

    fn render(&mut self, file: &Path, svg: Option<&Path>) -> Outcome {
        let board = parse_board(&read(file)?).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
        match svg {
            Some(path) => write_file(path, &render::render_svg(&board)),
            None => {
                let _ = write!(self.out, "{}", render::render_ascii(&board));
                Ok(())
            }
        }
    }

    fn gadget_check(&mut self, file: Option<&Path>) -> Outcome {
        let gadgets: Vec<GadgetSpec> = match file {
            Some(p) => vec![parse_gadget(&read(p)?).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?],
            None => builtin_catalog(),
        };
        let mut passed = 0;
        for (i, g) in gadgets.iter().enumerate() {
            let report = check_contract(g).map_err(|e| match e {
                GadgetError::HarnessTooLarge { .. } => Failure::Limit(e.to_string()),
                other => Failure::Input(other.to_string()),
            })?;
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            say!(
                self.out,
                "{i}\t{}\t{}\t{verdict}\t{} cases",
                g.kind,
                g.owner,
                report.cases.len()
            );
            for c in report.failures() {
                say!(
                    self.err,
                    "gadget {i}: {} expected {} got {:?}",
                    c.description,
                    c.expected,
                    c.actual
                );
            }
            passed += usize::from(report.passed());
        }
        say!(self.out, "summary pass {passed}/{}", gadgets.len());
        if passed == gadgets.len() {
            Ok(())
        } else {
            Err(Failure::Silent(EXIT_FAILURE))
        }
    }

    fn dispatch(&mut self, command: Command) -> Outcome {
        match command {
            Command::SolveTt { file, pv, max_nodes } => self.solve_tt(&file, pv, max_nodes),
            Command::SolveGg { file, max_nodes } => self.solve_gg(&file, max_nodes),
            Command::Reduce {
                file,
                output,
                area_report,
            } => self.reduce(&file, &output, area_report),
            Command::Verify {
                corpus,
                random: _,
                count,
                max_vertices,
                seed,
                max_nodes,
            } => self.verify(corpus.as_deref(), count, max_vertices, seed, max_nodes),
            Command::Gen { vertices, seed, output } => self.gen(vertices, seed, &output),
            Command::Render { file, svg } => self.render(&file, svg.as_deref()),
            Command::GadgetCheck { file } => self.gadget_check(file.as_deref()),
        }
    }
}

/// Runs one command line and returns its exit code. `env_max_nodes` is the
/// raw value of [`MAX_NODES_VAR`], if set.
pub fn run<I, T>(args: I, env_max_nodes: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let env_max_nodes = match env_max_nodes.map(str::parse::<u64>) {
        None => None,
        Some(Ok(n)) => {
            say!(err, "{MAX_NODES_VAR}={n} caps the default node budget");
            Some(n)
        }
        Some(Err(_)) => {
            say!(err, "error: {MAX_NODES_VAR} must be a non-negative integer");
            return EXIT_USAGE;
        }
    };
    let mut io = Io {
        out,
        err,
        env_max_nodes,
    };
    match io.dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(m)) => {
            say!(io.err, "error: {m}");
            EXIT_FAILURE
        }
        Err(Failure::Limit(m)) => {
            say!(io.err, "resource limit: {m}");
            EXIT_LIMIT
        }
        Err(Failure::Usage(m)) => {
            say!(io.err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Silent(code)) => code,
    }
}
