//! The `hyperdec` command line.
//!
//! [`run_cli`] parses arguments, runs one command and writes its result.
//! Exit codes: 0 on success, 1 when the mathematics fails (an infinite
//! standard part, an undecidable floor, ...), 2 for usage and syntax errors.

use std::cmp::Ordering;
use std::io::{BufRead, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use hyperdec_core::hypercalc::{check_trace, newton_trace, NewtonTrace};
use hyperdec_core::lightstone::{digit_at, parse as parse_lightstone, render_with, Position, RenderOptions};
use hyperdec_core::scalar::parse_rational;
use hyperdec_core::shell::{
    eval_statement, figure2, figure3, parse_func, parse_statement, Figure, Format, LabeledPoint,
    MicroscopeScene,
};
use hyperdec_core::transfer::{
    derivative, evt_demo, limit_fun, limit_seq_report, uniform_continuity_probe, ProbeSet, SeqLimit,
    UniformContinuity,
};
use hyperdec_core::{DecFloat, HyperError, HyperValue, Mode, NumContext, Scalar};

#[derive(Debug, Parser)]
#[command(name = "hyperdec", version, about = "A calculator for hyperreal numbers")]
struct Cli {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficient arithmetic: exact rationals or decimal floats.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Significant digits in float mode.
    #[arg(long, global = true)]
    prec: Option<u32>,
    /// Series terms kept per value.
    #[arg(long, global = true)]
    terms: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Svg,
    Ascii,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression, optionally `... at x = value`.
    Eval {
        expr: String,
        /// Also print the Lightstone decimal form.
        #[arg(long)]
        lightstone: bool,
    },
    /// Standard part of an expression.
    St { expr: String },
    /// Magnitude class, sign and integer/fraction/infinitesimal split.
    Classify { expr: String },
    /// Render a value in Lightstone notation, or parse one with --parse.
    Lightstone {
        input: String,
        /// Digits shown on either side of each hyper place.
        #[arg(long, default_value_t = 3)]
        window: u32,
        /// Treat the input as Lightstone text and print its value.
        #[arg(long)]
        parse: bool,
        /// Use `...` and `^` instead of the ellipsis and combining hat.
        #[arg(long)]
        ascii: bool,
    },
    /// Decimal digits at standard places (`3`) and hyper places (`H-1`, `2H`).
    Digits {
        expr: String,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,H-2,H-1,H,H+1")]
        places: Vec<String>,
    },
    /// Derivative of a one-variable function at a standard point.
    Deriv {
        func: String,
        #[arg(long)]
        at: String,
    },
    /// Limit of a sequence as n tends to infinity.
    Lim { seq: String },
    /// Limit of a function at a standard point.
    Limfun {
        func: String,
        #[arg(long)]
        at: String,
    },
    /// Probe uniform continuity at standard, near-standard and infinite points.
    Ucheck { func: String },
    /// Argmax of a function over the partition i/n of [0, 1], refined by doubling.
    Evt {
        func: String,
        #[arg(long, default_value_t = 10)]
        n: u64,
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// Newton's method from below on a concave increasing function with root 1.
    Newton {
        func: String,
        #[arg(long, default_value = "1/2")]
        x0: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Digits shown by the idealized calculator.
        #[arg(long, default_value_t = 6)]
        display: u32,
        /// Check x_n < 1, monotonicity and the mean value bound at each step.
        #[arg(long)]
        check: bool,
    },
    /// Draw a magnified number line.
    Microscope {
        /// A built-in figure: 2 (three points about 1) or 3 (slope of x^2).
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        figure: Option<u8>,
        #[arg(long)]
        center: Option<String>,
        #[arg(long)]
        scale: Option<String>,
        #[arg(long = "point")]
        points: Vec<String>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: FormatArg,
    },
    /// Read expressions from standard input, one per line.
    Repl,
}

/// A failed command with the source text its error span points into.
struct Failure {
    error: HyperError,
    source: Option<String>,
}

impl From<HyperError> for Failure {
    fn from(error: HyperError) -> Self {
        Failure { error, source: None }
    }
}

trait WithSource<T> {
    fn src(self, source: &str) -> Result<T, Failure>;
}

impl<T> WithSource<T> for hyperdec_core::Result<T> {
    fn src(self, source: &str) -> Result<T, Failure> {
        self.map_err(|error| Failure {
            error,
            source: Some(source.to_string()),
        })
    }
}

/// What a command produced, in both output forms.
struct Outcome {
    text: String,
    value: Value,
    lightstone: Option<String>,
    truncated: bool,
}

impl Outcome {
    fn plain(text: impl Into<String>, value: Value) -> Self {
        Outcome {
            text: text.into(),
            value,
            lightstone: None,
            truncated: false,
        }
    }
}

/// Runs one invocation reading standard input for `repl`.
pub fn run_cli<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    run_cli_with_input(args, &mut input, out, err)
}

pub fn run_cli_with_input<I, S>(
    args: I,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let to_out = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if to_out {
                let _ = write!(out, "{text}");
                return 0;
            }
            let _ = write!(err, "{text}");
            return 2;
        }
    };
    let ctx = match context(&cli) {
        Ok(ctx) => ctx,
        Err(e) => return report_failure(&cli, e.into(), out, err),
    };
    if matches!(cli.command, Command::Repl) {
        return repl(ctx, cli.json, input, out, err);
    }
    let result = match ctx.mode() {
        Mode::Exact => execute::<BigRational>(&cli.command, &ctx),
        Mode::Float => execute::<DecFloat>(&cli.command, &ctx),
    };
    match result {
        Ok(outcome) => {
            if cli.json {
                let envelope = json!({
                    "ok": true,
                    "value": outcome.value,
                    "lightstone": outcome.lightstone,
                    "flags": { "truncated": outcome.truncated },
                });
                let _ = writeln!(out, "{envelope}");
            } else {
                let _ = write!(out, "{}", outcome.text);
                if !outcome.text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            0
        }
        Err(f) => report_failure(&cli, f, out, err),
    }
}

fn exit_code(e: &HyperError) -> i32 {
    if e.is_usage() {
        2
    } else {
        1
    }
}

fn report_failure(cli: &Cli, f: Failure, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if cli.json {
        let envelope = json!({
            "ok": false,
            "error": { "kind": f.error.kind(), "message": f.error.to_string() },
        });
        let _ = writeln!(out, "{envelope}");
    } else {
        let _ = write!(err, "{}", describe(&f));
    }
    exit_code(&f.error)
}

/// `error: ...` plus the source line with a caret under the span.
fn describe(f: &Failure) -> String {
    let mut text = format!("error: {}\n", f.error);
    let span = match &f.error {
        HyperError::SyntaxError { span, .. } | HyperError::UnknownIdentifier { span, .. } => Some(span.clone()),
        _ => None,
    };
    if let (Some(span), Some(src)) = (span, &f.source) {
        let lead = src.get(..span.start).map_or(span.start, |s| s.chars().count());
        let width = src.get(span.clone()).map_or(1, |s| s.chars().count().max(1));
        text.push_str(&format!("  {src}\n  {}{}\n", " ".repeat(lead), "^".repeat(width)));
    }
    text
}

fn context(cli: &Cli) -> hyperdec_core::Result<NumContext> {
    // the calculator model only makes sense with rounding
    let default_mode = match cli.command {
        Command::Newton { .. } => ModeArg::Float,
        _ => ModeArg::Exact,
    };
    let mode = match cli.mode.unwrap_or(default_mode) {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float,
    };
    NumContext::new(
        cli.terms.unwrap_or(NumContext::DEFAULT_TERMS),
        mode,
        cli.prec.unwrap_or(NumContext::DEFAULT_PRECISION),
    )
}

fn value<C: Scalar>(src: &str, ctx: &NumContext) -> Result<HyperValue<C>, Failure> {
    let stmt = parse_statement(src).src(src)?;
    eval_statement(&stmt, ctx).src(src)
}

fn standard_point<C: Scalar>(src: &str, ctx: &NumContext) -> Result<C, Failure> {
    let v = value::<C>(src, ctx)?;
    v.as_standard().ok_or_else(|| {
        Failure::from(HyperError::InvalidArgument(format!("`{src}` = {v} is not a standard number")))
    })
}

fn value_outcome<C: Scalar>(v: &HyperValue<C>, text: String) -> Outcome {
    Outcome {
        text,
        value: json!(v.to_string()),
        lightstone: render_with(v, RenderOptions::default()).ok().map(|l| l.to_string()),
        truncated: v.is_truncated(),
    }
}

fn execute<C: Scalar>(cmd: &Command, ctx: &NumContext) -> Result<Outcome, Failure> {
    let probes = ProbeSet::<C>::standard(ctx);
    match cmd {
        Command::Eval { expr, lightstone } => {
            let v = value::<C>(expr, ctx)?;
            let mut text = format!("{v}\n");
            if *lightstone {
                text.push_str(&format!("{}\n", render_with(&v, RenderOptions::default())?));
            }
            let cmp = match v.compare(&HyperValue::one(ctx)) {
                Ok(Ordering::Less) => "Less".to_string(),
                Ok(Ordering::Equal) => "Equal".to_string(),
                Ok(Ordering::Greater) => "Greater".to_string(),
                Err(e) => format!("undetermined ({e})"),
            };
            text.push_str(&format!("compare to 1: {cmp}\n"));
            Ok(value_outcome(&v, text))
        }
        Command::St { expr } => {
            let s = value::<C>(expr, ctx)?.standard_part()?;
            Ok(value_outcome(&HyperValue::from_scalar(s.clone(), ctx), s.to_string()))
        }
        Command::Classify { expr } => {
            let v = value::<C>(expr, ctx)?;
            let class = v.classify();
            let mut text = format!("{class}\n");
            let mut split = Value::Null;
            match v.decompose() {
                Ok(d) => {
                    text.push_str(&format!(
                        "integer part: {}\nfraction: {}\ninfinitesimal part: {}\n",
                        d.integer, d.fraction, d.infinitesimal
                    ));
                    split = json!({
                        "integer": d.integer.to_string(),
                        "fraction": d.fraction.to_string(),
                        "infinitesimal": d.infinitesimal.to_string(),
                    });
                }
                Err(e) => text.push_str(&format!("decomposition unavailable: {e}\n")),
            }
            let mut out = value_outcome(&v, text);
            out.value = json!({ "value": v.to_string(), "class": class.to_string(), "decomposition": split });
            Ok(out)
        }
        Command::Lightstone {
            input,
            window,
            parse,
            ascii,
        } => {
            if *parse {
                let v: HyperValue<C> = parse_lightstone(input, ctx).src(input)?;
                return Ok(value_outcome(&v, v.to_string()));
            }
            let v = value::<C>(input, ctx)?;
            let l = render_with(
                &v,
                RenderOptions {
                    window: *window,
                    ..RenderOptions::default()
                },
            )?;
            let text = if *ascii { l.to_ascii() } else { l.to_string() };
            let mut out = value_outcome(&v, text);
            out.lightstone = Some(l.to_string());
            Ok(out)
        }
        Command::Digits { expr, places } => {
            let v = value::<C>(expr, ctx)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for p in places {
                let pos = parse_place(p)?;
                match digit_at(&v, pos) {
                    Ok(d) => {
                        text.push_str(&format!("place {pos}: {d}\n"));
                        rows.push(json!({ "place": pos.to_string(), "digit": d }));
                    }
                    Err(e) => {
                        text.push_str(&format!("place {pos}: {e}\n"));
                        rows.push(json!({ "place": pos.to_string(), "digit": null, "error": e.kind() }));
                    }
                }
            }
            let mut out = value_outcome(&v, text);
            out.value = Value::Array(rows);
            Ok(out)
        }
        Command::Deriv { func, at } => {
            let (f, _) = parse_func(func, "x").src(func)?;
            let x0 = standard_point::<C>(at, ctx)?;
            let d = derivative(&f, &x0, &probes)?;
            Ok(Outcome::plain(d.to_string(), json!(d.to_string())))
        }
        Command::Lim { seq } => {
            let (u, _) = parse_func(seq, "n").src(seq)?;
            let report = limit_seq_report::<C>(&u, ctx);
            let mut text = format!("{}\n", report.at_omega);
            if !report.consistent {
                text.push_str(&format!("warning: at H^2 the sequence {}\n", report.at_omega_squared));
            }
            let value = json!({
                "at_omega": report.at_omega.to_string(),
                "value_at_omega": report.value_at_omega.as_ref().map(ToString::to_string),
                "at_omega_squared": report.at_omega_squared.to_string(),
                "consistent": report.consistent,
            });
            if let SeqLimit::Indeterminate(why) = &report.at_omega {
                return Err(HyperError::NoLimit(why.clone()).into());
            }
            Ok(Outcome::plain(text, value))
        }
        Command::Limfun { func, at } => {
            let (f, _) = parse_func(func, "x").src(func)?;
            let a = standard_point::<C>(at, ctx)?;
            let l = limit_fun(&f, &a, &probes)?;
            Ok(Outcome::plain(l.to_string(), json!(l.to_string())))
        }
        Command::Ucheck { func } => {
            let (f, _) = parse_func(func, "x").src(func)?;
            let result = uniform_continuity_probe(&f, &probes);
            let value = match &result {
                UniformContinuity::PassAllProbes => json!({ "result": "pass_all_probes" }),
                UniformContinuity::Fail(w) => json!({
                    "result": "fail",
                    "point": w.point.to_string(),
                    "epsilon": w.epsilon.to_string(),
                    "image_difference": w.image_difference.to_string(),
                }),
                UniformContinuity::Inconclusive(why) => json!({ "result": "inconclusive", "reason": why }),
            };
            Ok(Outcome::plain(result.to_string(), value))
        }
        Command::Evt { func, n, levels } => {
            let (f, _) = parse_func(func, "x").src(func)?;
            let report = evt_demo::<C>(&f, *n, *levels, ctx)?;
            let mut text = String::from("n\tindex\tx\tf(x)\n");
            for row in &report.refinement {
                text.push_str(&format!("{}\t{}\t{}\t{}\n", row.n, row.index, row.x, row.value));
            }
            text.push_str(&format!("argmax x = {}, f(x) = {}\n", report.x, report.value));
            let value = serde_json::to_value(&report).expect("reports serialize");
            Ok(Outcome::plain(text, value))
        }
        Command::Newton {
            func,
            x0,
            steps,
            display,
            check,
        } => {
            let (f, _) = parse_func(func, "x").src(func)?;
            let start = parse_rational(x0)
                .ok_or_else(|| HyperError::InvalidArgument(format!("x0 must be a rational, got `{x0}`")))?;
            let trace: NewtonTrace<C> = newton_trace(&f, &start, *steps, *display, ctx)?;
            newton_outcome(&trace, *check)
        }
        Command::Microscope {
            figure,
            center,
            scale,
            points,
            format,
        } => {
            let fig: Figure<C> = match (figure, center) {
                (Some(2), None) => figure2(ctx)?,
                (Some(3), None) => figure3(ctx)?,
                (None, Some(c)) => {
                    let scale = scale.as_deref().unwrap_or("eps");
                    let pts = points
                        .iter()
                        .map(|p| {
                            Ok(LabeledPoint {
                                label: p.clone(),
                                value: value::<C>(p, ctx)?,
                            })
                        })
                        .collect::<Result<Vec<_>, Failure>>()?;
                    let scene = MicroscopeScene::new("", value::<C>(c, ctx)?, value::<C>(scale, ctx)?, pts)?;
                    Figure {
                        title: format!("magnified about {c} at scale {scale}"),
                        panels: vec![scene],
                        notes: Vec::new(),
                    }
                }
                _ => {
                    return Err(HyperError::InvalidArgument(
                        "give either --figure or --center with --point values".into(),
                    )
                    .into())
                }
            };
            let format = match format {
                FormatArg::Svg => Format::Svg,
                FormatArg::Ascii => Format::Ascii,
            };
            let doc = fig.render(format)?;
            Ok(Outcome::plain(doc.clone(), json!(doc)))
        }
        Command::Repl => unreachable!("handled before dispatch"),
    }
}

fn newton_outcome<C: Scalar>(trace: &NewtonTrace<C>, check: bool) -> Result<Outcome, Failure> {
    let mut text = String::from("n\tdisplay\n");
    for (n, d) in trace.displays.iter().enumerate() {
        text.push_str(&format!("{n}\t{d}\n"));
    }
    text.push_str(&format!("halt: {}\n", trace.halt));
    if let Some(k) = trace.first_all_nines() {
        text.push_str(&format!("all nines from step {k}\n"));
    }
    text.push_str(&format!("final display: {}\n", trace.final_display()));
    let mut value = json!({
        "iterates": trace.iterates.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "displays": trace.displays,
        "halt": trace.halt,
        "first_all_nines": trace.first_all_nines(),
        "final_display": trace.final_display(),
    });
    if check {
        let report = check_trace(trace)?;
        text.push_str(&format!(
            "checked {} steps: x_n < 1, x_(n+1) > x_n and the mean value bound hold\n",
            report.steps.len()
        ));
        for b in &report.boundary {
            text.push_str(&format!("boundary: `{}` has zero margin at step {}\n", b.assertion, b.n));
        }
        value["check"] = serde_json::to_value(&report).expect("reports serialize");
    }
    Ok(Outcome::plain(text, value))
}

/// `7`, `H`, `H-2`, `H+1`, `2H`, `3H-1`.
fn parse_place(s: &str) -> Result<Position, Failure> {
    let bad = || HyperError::InvalidArgument(format!("bad place `{s}`; use forms like 3, H, H-1, 2H+2"));
    let t = s.trim();
    let Some(h) = t.find('H') else {
        let j: i64 = t.parse().map_err(|_| bad())?;
        return Ok(Position::standard(j)?);
    };
    let m: u32 = match &t[..h] {
        "" => 1,
        digits => digits.parse().map_err(|_| bad())?,
    };
    let j: i64 = match &t[h + 1..] {
        "" => 0,
        rest if rest.starts_with('+') || rest.starts_with('-') => rest.parse().map_err(|_| bad())?,
        _ => return Err(bad().into()),
    };
    if m == 0 {
        return Err(bad().into());
    }
    Ok(Position::new(m, j)?)
}

fn repl(
    mut ctx: NumContext,
    json_out: bool,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    const HELP: &str = "enter an expression, e.g. `st((x^2 - 1)/(x - 1)) at x = 1 - eps`\n\
                        :mode exact|float   :prec P   :terms K   :quit";
    let mut line = String::new();
    loop {
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => return 0,
            Ok(_) => {}
        }
        let src = line.trim();
        if src.is_empty() || src.starts_with('#') {
            continue;
        }
        if let Some(cmd) = src.strip_prefix(':') {
            let mut parts = cmd.split_whitespace();
            let updated = match (parts.next(), parts.next()) {
                (Some("quit" | "q"), _) => return 0,
                (Some("help"), _) => {
                    let _ = writeln!(out, "{HELP}");
                    continue;
                }
                (Some("mode"), Some(m)) => m
                    .parse::<Mode>()
                    .and_then(|m| NumContext::new(ctx.terms(), m, ctx.precision())),
                (Some("prec"), Some(p)) => p
                    .parse::<u32>()
                    .map_err(|_| HyperError::InvalidContext(format!("bad precision `{p}`")))
                    .and_then(|p| NumContext::new(ctx.terms(), ctx.mode(), p)),
                (Some("terms"), Some(k)) => k
                    .parse::<usize>()
                    .map_err(|_| HyperError::InvalidContext(format!("bad term count `{k}`")))
                    .and_then(|k| ctx.with_terms(k)),
                _ => Err(HyperError::InvalidArgument(format!("unknown command `:{cmd}`; try :help"))),
            };
            match updated {
                Ok(c) => ctx = c,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                }
            }
            continue;
        }
        let result = match ctx.mode() {
            Mode::Exact => value::<BigRational>(src, &ctx).map(|v| (v.to_string(), v.to_json())),
            Mode::Float => value::<DecFloat>(src, &ctx).map(|v| (v.to_string(), v.to_json())),
        };
        match result {
            Ok((text, series)) if json_out => {
                let _ = writeln!(out, "{}", json!({ "ok": true, "value": text, "series": serde_json::from_str::<Value>(&series).ok() }));
            }
            Ok((text, _)) => {
                let _ = writeln!(out, "{text}");
            }
            Err(f) => {
                let _ = write!(err, "{}", describe(&f));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn places() {
        assert_eq!(parse_place("3").ok().map(|p| p.to_string()), Some("3".into()));
        assert_eq!(parse_place("H").ok().map(|p| p.to_string()), Some("H".into()));
        assert_eq!(parse_place("H-2").ok().map(|p| p.to_string()), Some("H-2".into()));
        assert_eq!(parse_place("2H+1").ok().map(|p| p.to_string()), Some("2H+1".into()));
        assert!(parse_place("0").is_err());
        assert!(parse_place("0H").is_err());
        assert!(parse_place("Hx").is_err());
    }

    #[test]
    fn caret_under_span() {
        let f = Failure {
            error: HyperError::UnknownIdentifier {
                name: "y".into(),
                span: 4..5,
            },
            source: Some("x + y".into()),
        };
        assert_eq!(describe(&f), "error: unknown identifier `y` at 4..5\n  x + y\n      ^\n");
    }
}
