//! Interactive loop and batch script runner. Both feed logical lines to
//! the same interpreter, so a script prints exactly what a session typing
//! the same lines would.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use crate::interp::{Config, Interpreter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionConfig {
    pub auto_symbols: bool,
    pub implicit_mul: bool,
    pub debug_gb: bool,
    pub prompt: String,
    pub script_path: Option<PathBuf>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            auto_symbols: true,
            implicit_mul: false,
            debug_gb: false,
            prompt: "cas> ".to_string(),
            script_path: None,
        }
    }
}

impl SessionConfig {
    fn interpreter(&self) -> Interpreter {
        Interpreter::new(Config {
            auto_symbols: self.auto_symbols,
            implicit_mul: self.implicit_mul,
            debug_gb: self.debug_gb,
        })
    }
}

/// Reads the next logical line: physical lines ending in `\` are joined
/// with the following one. The backslash and newline are kept so the lexer
/// sees the continuation and positions stay exact. Returns the number of
/// physical lines consumed, zero at end of input.
fn read_logical_line(input: &mut dyn BufRead, buf: &mut String) -> io::Result<usize> {
    buf.clear();
    let mut lines = 0;
    loop {
        let start = buf.len();
        if input.read_line(buf)? == 0 {
            return Ok(lines);
        }
        lines += 1;
        let line = buf[start..].trim_end_matches(['\n', '\r']);
        if !line.trim_end().ends_with('\\') {
            return Ok(lines);
        }
        if !buf.ends_with('\n') {
            buf.push('\n');
        }
    }
}

fn flush_notes(interp: &mut Interpreter, err: &mut dyn Write) -> io::Result<()> {
    for note in interp.take_notes() {
        writeln!(err, "debug: {note}")?;
    }
    Ok(())
}

/// Runs the read-eval-print loop until end of input or `quit`. Errors are
/// reported and the loop continues. The prompt is written only when
/// `show_prompt` is set.
pub fn run_repl(
    config: &SessionConfig,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    show_prompt: bool,
) -> io::Result<i32> {
    let mut interp = config.interpreter();
    let mut line_no = 1;
    let mut buf = String::new();
    loop {
        if show_prompt {
            write!(out, "{}", config.prompt)?;
            out.flush()?;
        }
        let consumed = read_logical_line(input, &mut buf)?;
        if consumed == 0 {
            if show_prompt {
                writeln!(out)?;
            }
            return Ok(0);
        }
        if buf.trim() == "quit" {
            return Ok(0);
        }
        let result = interp.execute(&buf, line_no, &mut |v| {
            // Output failures surface on the next explicit write.
            let _ = writeln!(out, "{v}");
        });
        flush_notes(&mut interp, err)?;
        if let Err(d) = result {
            writeln!(err, "{d}")?;
        }
        line_no += consumed;
    }
}

/// Executes a script. The first error is reported and ends the run with
/// status 1.
pub fn run_script_source(
    config: &SessionConfig,
    src: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let mut interp = config.interpreter();
    let mut input = src.as_bytes();
    let mut line_no = 1;
    let mut buf = String::new();
    loop {
        let consumed = read_logical_line(&mut input, &mut buf)?;
        if consumed == 0 {
            return Ok(0);
        }
        let result = interp.execute(&buf, line_no, &mut |v| {
            let _ = writeln!(out, "{v}");
        });
        flush_notes(&mut interp, err)?;
        if let Err(d) = result {
            writeln!(err, "{d}")?;
            return Ok(1);
        }
        line_no += consumed;
    }
}

/// Loads and runs the script at `config.script_path`.
pub fn run_script(config: &SessionConfig, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let Some(path) = &config.script_path else {
        writeln!(err, "FileNotFound: no script path given")?;
        return Ok(1);
    };
    match fs::read_to_string(path) {
        Ok(src) => run_script_source(config, &src, out, err),
        Err(e) => {
            writeln!(err, "FileNotFound: {}: {e}", path.display())?;
            Ok(1)
        }
    }
}
