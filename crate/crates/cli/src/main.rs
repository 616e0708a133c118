use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env = std::env::var(tilegeo_cli::MAX_NODES_VAR).ok();
    let code = tilegeo_cli::run(
        std::env::args_os(),
        env.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
