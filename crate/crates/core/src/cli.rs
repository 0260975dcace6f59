//! The `gaussrig` command line.
//!
//! Exit codes: 0 affirmative, 1 negative, 2 malformed input or I/O failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::derivation::{check, derive, derive_bfs, CheckError, Derivation, DeriveError};
use crate::motzkin::{compile, trees_by_size, values_of_type, Bijection, TypeValue};
use crate::polynomial::NatPoly;
use crate::quotient::{canon, decide_equal};
use crate::rewrite::{critical_pairs, normalize, normalize_traced};

#[derive(Debug, Parser)]
#[command(name = "gaussrig", version, about = "Equality, rewriting and derivations in N[x]/(x = 1 + x + x^2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether two polynomials are equal in the quotient rig.
    Decide { p: NatPoly, q: NatPoly },
    /// Print the normal form under the rewrite system.
    Normalize {
        p: NatPoly,
        /// Print every rule application before the normal form.
        #[arg(long)]
        trace: bool,
    },
    /// Print the canonical element of the class (`nat:<n>` or `gauss:<m>+<n>i`).
    Canon { p: NatPoly },
    /// Emit a derivation file proving `p ∼ q`.
    Derive {
        p: NatPoly,
        q: NatPoly,
        /// Search for a shortest derivation of at most this many steps instead.
        #[arg(long, value_name = "BUDGET")]
        bfs: Option<usize>,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Validate a derivation file.
    Check { file: PathBuf },
    /// Compile `derive(p, q)` to a bijection and round-trip every small value.
    Synth {
        p: NatPoly,
        q: NatPoly,
        /// Largest total tree size of the values checked on each side.
        #[arg(long, value_name = "N")]
        verify_size: usize,
        /// Also print the image of this value of type `p` (`<k>#<copy>:[t,...]`).
        #[arg(long, value_name = "VALUE")]
        forward: Vec<TypeValue>,
        /// Also print the preimage of this value of type `q`.
        #[arg(long, value_name = "VALUE")]
        backward: Vec<TypeValue>,
    },
    /// List Motzkin trees of each size up to `n`.
    EnumMotzkin {
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// List the critical pairs of the rewrite system and whether they join.
    CriticalPairs {
        #[arg(long, value_name = "D")]
        max_degree: usize,
    },
}

/// A failed command: its exit code and the diagnostic for stderr.
struct Failure(i32, String);

impl Failure {
    fn negative(msg: impl Into<String>) -> Self {
        Self(1, msg.into())
    }

    fn error(msg: impl Into<String>) -> Self {
        Self(2, msg.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::error(format!("error: {e}"))
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Decide { p, q } => {
            let equal = decide_equal(&p, &q);
            writeln!(out, "{}", if equal { "equal" } else { "not-equal" })?;
            Ok(if equal { 0 } else { 1 })
        }
        Command::Normalize { p, trace } => {
            let nf = if trace {
                let (nf, steps) = normalize_traced(&p);
                for s in &steps {
                    writeln!(out, "{s}")?;
                }
                nf
            } else {
                normalize(&p)
            };
            writeln!(out, "{nf}")?;
            Ok(0)
        }
        Command::Canon { p } => {
            writeln!(out, "{}", canon(&p))?;
            Ok(0)
        }
        Command::Derive { p, q, bfs, output } => {
            let d = match bfs {
                Some(budget) => derive_bfs(&p, &q, budget).ok_or_else(|| {
                    if decide_equal(&p, &q) {
                        Failure::negative(format!("no derivation of {p} ∼ {q} within {budget} steps"))
                    } else {
                        Failure::negative(format!("not-equal: {p} and {q} are not equal"))
                    }
                })?,
                None => derive(&p, &q).map_err(|e| match e {
                    DeriveError::NotEqual { .. } | DeriveError::ConstantMismatch { .. } => {
                        Failure::negative(format!("not-equal: {e}"))
                    }
                    other => Failure::error(format!("error: {other}")),
                })?,
            };
            let text = d.to_file_string();
            match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::error(format!("error: cannot write {}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Command::Check { file } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Failure::error(format!("error: cannot read {}: {e}", file.display())))?;
            let d = Derivation::from_file_str(&text)
                .map_err(|e| Failure::error(format!("error: {}: {e}", file.display())))?;
            match check(&d) {
                Ok(()) => {
                    writeln!(out, "ok")?;
                    Ok(0)
                }
                Err(CheckError::InvalidStep { index, step, source }) => {
                    writeln!(out, "invalid step {index}: {step}: {source}")?;
                    Ok(1)
                }
                Err(e @ CheckError::EndpointMismatch { .. }) => {
                    writeln!(out, "invalid endpoint: {e}")?;
                    Ok(1)
                }
            }
        }
        Command::Synth { p, q, verify_size, forward, backward } => {
            let d = derive(&p, &q).map_err(|e| match e {
                DeriveError::NotEqual { .. } | DeriveError::ConstantMismatch { .. } => {
                    Failure::negative(format!("not-equal: {e}"))
                }
                other => Failure::error(format!("error: {other}")),
            })?;
            let b = compile(&d).map_err(|e| Failure::error(format!("error: {e}")))?;
            writeln!(out, "derivation: {} steps", d.len())?;
            let (n_src, n_dst) = verify_roundtrips(&b, verify_size).map_err(Failure::negative)?;
            writeln!(out, "source values checked: {n_src}")?;
            writeln!(out, "target values checked: {n_dst}")?;
            for v in forward {
                let w = b.forward(v.clone()).map_err(|e| Failure::error(format!("error: {e}")))?;
                writeln!(out, "{v} => {w}")?;
            }
            for w in backward {
                let v = b.backward(w.clone()).map_err(|e| Failure::error(format!("error: {e}")))?;
                writeln!(out, "{w} <= {v}")?;
            }
            writeln!(out, "ok")?;
            Ok(0)
        }
        Command::EnumMotzkin { n, count_only } => {
            for (size, trees) in trees_by_size(n).iter().enumerate() {
                if count_only {
                    writeln!(out, "size {size}: {}", trees.len())?;
                } else {
                    for t in trees {
                        writeln!(out, "{t}")?;
                    }
                }
            }
            Ok(0)
        }
        Command::CriticalPairs { max_degree } => {
            let pairs = critical_pairs(max_degree);
            for cp in &pairs {
                writeln!(out, "{cp}")?;
            }
            let stuck = pairs.iter().filter(|cp| !cp.joinable).count();
            writeln!(out, "{} critical pairs, {stuck} not joinable", pairs.len())?;
            Ok(if stuck == 0 { 0 } else { 1 })
        }
    }
}

/// Round-trips every source and target value of total size `≤ n`; returns the two counts.
fn verify_roundtrips(b: &Bijection, n: usize) -> Result<(usize, usize), String> {
    let src = values_of_type(&b.source, n);
    let dst = values_of_type(&b.target, n);
    let bad_src = src.par_iter().find_first(|v| {
        b.forward(TypeValue::clone(v)).and_then(|w| b.backward(w)).ok().as_ref() != Some(*v)
    });
    if let Some(v) = bad_src {
        return Err(format!("round-trip failed on source value {v}"));
    }
    let bad_dst = dst.par_iter().find_first(|w| {
        b.backward(TypeValue::clone(w)).and_then(|v| b.forward(v)).ok().as_ref() != Some(*w)
    });
    if let Some(w) = bad_dst {
        return Err(format!("round-trip failed on target value {w}"));
    }
    Ok((src.len(), dst.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("gaussrig").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn decide_and_normalize() {
        assert_eq!(call(&["decide", "x", "x^5"]), (0, "equal\n".into(), String::new()));
        assert_eq!(call(&["decide", "1", "2"]).0, 1);
        assert_eq!(call(&["normalize", "x^4"]).1, "2 + x^2\n");
        assert_eq!(call(&["canon", "x"]).1, "gauss:0+1i\n");
        assert_eq!(call(&["canon", "7"]).1, "nat:7\n");
    }

    #[test]
    fn trace_ends_with_the_normal_form() {
        let (code, out, _) = call(&["normalize", "x^5", "--trace"]);
        assert_eq!(code, 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.first(), Some(&"x^5  --[R1,m=1]-->  2x + x^3"));
        assert_eq!(lines.last(), Some(&"x"));
    }

    #[test]
    fn malformed_polynomial_names_the_token() {
        let (code, out, err) = call(&["decide", "x^", "x"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("'x^'"), "{err}");
        assert_eq!(call(&["frobnicate"]).0, 2);
    }

    #[test]
    fn derive_unequal_is_negative() {
        let (code, out, err) = call(&["derive", "x", "x^2"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.starts_with("not-equal"));
        assert_eq!(call(&["derive", "x", "x^2", "--bfs", "5"]).0, 1);
    }

    #[test]
    fn synth_and_enumeration() {
        let (code, out, _) = call(&["synth", "x", "x^5", "--verify-size", "4", "--forward", "1#0:[e]"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("source values checked: 17\n"), "{out}");
        assert!(out.ends_with("ok\n"));
        let (_, counts, _) = call(&["enum-motzkin", "4", "--count-only"]);
        assert_eq!(counts, "size 0: 1\nsize 1: 1\nsize 2: 2\nsize 3: 4\nsize 4: 9\n");
        let (_, trees, _) = call(&["enum-motzkin", "2"]);
        assert_eq!(trees, "e\ns(e)\ns(s(e))\nm(e,e)\n");
    }

    #[test]
    fn critical_pairs_all_join() {
        let (code, out, _) = call(&["critical-pairs", "--max-degree", "6"]);
        assert_eq!(code, 0);
        assert!(out.trim_end().ends_with("0 not joinable"));
    }
}
