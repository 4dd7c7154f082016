mod args;

use std::io::{self, Read, Write};
use std::process::ExitCode;

use cayley_hash::analysis::{
    collision_search_birthday, default_cap, emit_stream, enumerate_growth_capped,
    enumerate_scheme_growth, exact_girth_bfs, girth_lower_bound, monobit_test,
    periodic_spectral_radius, random_growth, runs_test, KeyValue, DEFAULT_STATE_CAP,
};
use cayley_hash::{
    bytes_to_bits, parse_bits, BitPoly, Digest, Encodable, Error, Gf2nField, Integers, Mat2,
    PrimeField, SchemeId, SchemeParams, Word,
};
use clap::Parser;
use num_bigint::BigUint;
use num_traits::{Num, One};
use serde::Serialize;
use serde_json::json;

use args::{Analyze, Cli, CombineArgs, Command, HashArgs, SchemeArgs};

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::OverCap { .. }) {
            2
        } else {
            1
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

type CmdResult = Result<(), Failure>;

enum Scheme {
    Prime(SchemeParams<PrimeField>),
    Binary(SchemeParams<Gf2nField>),
}

macro_rules! with_scheme {
    ($s:expr, $p:ident => $body:expr) => {
        match $s {
            Scheme::Prime($p) => $body,
            Scheme::Binary($p) => $body,
        }
    };
}

fn parse_prime(s: &str) -> Result<BigUint, Failure> {
    let s = s.trim();
    let (digits, radix) = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => (h, 16),
        None if s.chars().all(|c| c.is_ascii_digit()) => (s, 10),
        None => (s, 16),
    };
    BigUint::from_str_radix(digits, radix).map_err(|_| usage(format!("bad prime `{s}`")))
}

struct Ctx {
    no_warn: bool,
    json: bool,
}

impl Ctx {
    fn warn(&self, msg: &str) {
        if !self.no_warn {
            eprintln!("warning: {msg}");
        }
    }

    fn scheme_id(&self, a: &SchemeArgs) -> Result<SchemeId, Failure> {
        let id: SchemeId = a.scheme.parse()?;
        if id.is_broken() {
            self.warn(&format!(
                "scheme {id} has published collision attacks and is included for study only"
            ));
        }
        Ok(id)
    }

    fn build(&self, a: &SchemeArgs) -> Result<(SchemeId, Scheme), Failure> {
        let id = self.scheme_id(a)?;
        if id.is_binary_field() {
            if a.prime.is_some() {
                return Err(usage("tz works over GF(2^n); use --modulus, not --prime"));
            }
            let field = match &a.modulus {
                Some(m) => Gf2nField::from_modulus(BitPoly::from_hex(m.trim_start_matches("0x"))?)?,
                None => Gf2nField::default_127(),
            };
            if let Some(w) = field.spec().range_warning() {
                self.warn(&w);
            }
            return Ok((id, Scheme::Binary(SchemeParams::tillich_zemor(&field))));
        }
        if a.modulus.is_some() {
            return Err(usage(format!(
                "{id} works mod a prime; use --prime, not --modulus"
            )));
        }
        let field = match &a.prime {
            Some(p) => PrimeField::new(parse_prime(p)?)?,
            None => PrimeField::default_256(),
        };
        Ok((id, Scheme::Prime(SchemeParams::modular(id, &field)?)))
    }

    fn integer_gens(&self, a: &SchemeArgs) -> Result<(SchemeId, Vec<Mat2<Integers>>), Failure> {
        let id = self.scheme_id(a)?;
        let gens = id
            .integer_generators()
            .ok_or_else(|| usage(format!("{id} has no integer generators")))?;
        Ok((id, gens))
    }

    fn emit<T: KeyValue + Serialize>(&self, report: &T) {
        if self.json {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("serializable")
            );
        } else {
            print!("{}", report.to_kv());
        }
    }

    fn emit_pairs(&self, pairs: serde_json::Map<String, serde_json::Value>) {
        if self.json {
            println!("{}", serde_json::Value::Object(pairs));
        } else {
            for (k, v) in pairs {
                match v {
                    serde_json::Value::String(s) => println!("{k}={s}"),
                    other => println!("{k}={other}"),
                }
            }
        }
    }
}

fn read_input(a: &HashArgs) -> Result<Vec<bool>, Failure> {
    if let Some(b) = &a.bits {
        return Ok(parse_bits(b)?);
    }
    let bytes = match &a.input {
        Some(path) => std::fs::read(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            buf
        }
    };
    Ok(bytes_to_bits(&bytes))
}

fn digest_of<R: Encodable>(params: &SchemeParams<R>, bits: &[bool]) -> Digest {
    params.digest(&params.hash_bits(bits))
}

fn cmd_hash(ctx: &Ctx, a: &HashArgs) -> CmdResult {
    let (id, scheme) = ctx.build(&a.scheme)?;
    let mut bits = read_input(a)?;
    if a.pad {
        if id != SchemeId::Cookies {
            ctx.warn("--pad only affects the cookies scheme");
        }
        bits = with_scheme!(&scheme, p => p.pad(&bits));
    }
    let d = with_scheme!(&scheme, p => digest_of(p, &bits));
    println!("{d}");
    Ok(())
}

fn cmd_combine(ctx: &Ctx, a: &CombineArgs) -> CmdResult {
    let (id, scheme) = ctx.build(&a.scheme)?;
    if id == SchemeId::Cookies && !a.pad {
        ctx.warn(
            "cookie digests only combine correctly when the first segment was hashed with --pad",
        );
    }
    let d = with_scheme!(&scheme, p => {
        let x = Digest::from_hex(p.id(), &a.left)?;
        let y = Digest::from_hex(p.id(), &a.right)?;
        p.combine_digests(&x, &y)?
    });
    println!("{d}");
    Ok(())
}

fn cmd_analyze(ctx: &Ctx, a: &Analyze) -> CmdResult {
    match a {
        Analyze::Growth { scheme, n, cap } => {
            let (id, gens) = ctx.integer_gens(scheme)?;
            let cap = cap.unwrap_or_else(|| default_cap(gens.len()));
            let r = enumerate_scheme_growth(id, *n, cap).map_err(|e| match e {
                Error::OverCap { .. } => Failure {
                    code: 2,
                    msg: format!("{e} (pass --cap {n} to allow it)"),
                },
                e => e.into(),
            })?;
            ctx.emit(&r);
        }
        Analyze::Jsr {
            scheme,
            word,
            n,
            cap,
        } => {
            let (_, gens) = ctx.integer_gens(scheme)?;
            let w: Word = word.parse()?;
            let rho = periodic_spectral_radius(&w, &gens)?;
            let mut out = serde_json::Map::new();
            out.insert("word".into(), json!(w.to_string()));
            out.insert("periodic_spectral_radius".into(), json!(rho));
            if let Some(n) = n {
                let cap = cap.unwrap_or_else(|| default_cap(gens.len()));
                let r = enumerate_growth_capped(&gens, *n, cap)?;
                out.insert("n".into(), json!(n));
                out.insert("growth_exponent".into(), json!(r.exponent));
                out.insert("argmax_word".into(), json!(r.argmax_word.to_string()));
            }
            ctx.emit_pairs(out);
        }
        Analyze::Girth { scheme, cap } => {
            let (_, s) = ctx.build(scheme)?;
            let Scheme::Prime(p) = s else {
                return Err(usage("girth search needs a prime-field scheme"));
            };
            let r = exact_girth_bfs(&p.generators(), cap.unwrap_or(DEFAULT_STATE_CAP))?;
            ctx.emit(&r);
            if !r.complete {
                return Err(Failure {
                    code: 2,
                    msg: format!(
                        "state cap reached after {} elements; girth >= {}",
                        r.states_visited, r.girth
                    ),
                });
            }
        }
        Analyze::GirthBound { p_bits, prime, s } => {
            let p = match (p_bits, prime) {
                (Some(k), _) => BigUint::one() << *k,
                (None, Some(p)) => parse_prime(p)?,
                (None, None) => return Err(usage("give --p-bits or --prime")),
            };
            let bound = girth_lower_bound(&p, *s)?;
            let mut out = serde_json::Map::new();
            out.insert("p".into(), json!(p.to_string()));
            out.insert("s".into(), json!(s));
            out.insert("girth_lower_bound".into(), json!(bound));
            ctx.emit_pairs(out);
        }
        Analyze::Collide {
            scheme,
            length,
            budget,
            seed,
        } => {
            let (_, s) = ctx.build(scheme)?;
            let found = with_scheme!(&s, p => collision_search_birthday(&p.generators(), *length, *budget, *seed)?);
            match found {
                Some(w) => ctx.emit(&w),
                None => {
                    let mut out = serde_json::Map::new();
                    out.insert("found".into(), json!(false));
                    out.insert("trials".into(), json!(budget));
                    ctx.emit_pairs(out);
                }
            }
        }
        Analyze::Randwalk {
            scheme,
            n,
            trials,
            seed,
        } => {
            let (_, gens) = ctx.integer_gens(scheme)?;
            ctx.emit(&random_growth(&gens, *n, *trials, *seed)?);
        }
        Analyze::Stream {
            scheme,
            n,
            seed,
            out,
        } => {
            let (_, s) = ctx.build(scheme)?;
            let bytes = with_scheme!(&s, p => emit_stream(p, *n, *seed));
            match out {
                None => io::stdout().write_all(&bytes)?,
                Some(path) => {
                    std::fs::write(path, &bytes)?;
                    for t in [monobit_test(&bytes, *n), runs_test(&bytes, *n)] {
                        ctx.emit(&t);
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx {
        no_warn: cli.no_warn,
        json: cli.json,
    };
    let res = match &cli.command {
        Command::Hash(a) => cmd_hash(&ctx, a),
        Command::Combine(a) => cmd_combine(&ctx, a),
        Command::Analyze(a) => cmd_analyze(&ctx, a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
