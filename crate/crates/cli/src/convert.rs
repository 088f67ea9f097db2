use std::io::Read;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use pyramids::bijections::{
    compose_admissible, decode_pyramid_a2, dyck_to_tree, encode_pyramid_a2, factorize_walk, path_to_walk,
    right_pyramid_to_string, string_to_right_pyramid, string_to_walk, tree_to_dyck, walk_to_path, walk_to_string,
    AdmissibleComposition, AryTree, BitString, CompositionFactor, LatticePath, PathStep, Step, Walk,
};
use pyramids::{Piece, PieceLength, Pyramid};

use crate::output::{self, Format, SCHEMA_VERSION};
use crate::{piece_length, CliError, CliResult};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Bit string such as `1100`.
    String,
    /// Steps such as `RRLL`.
    Walk,
    /// Up/down steps such as `UUDD`.
    Path,
    /// Nested JSON arrays with `null` leaves.
    Tree,
    /// `{"a": 2, "pieces": [[offset, level], ...]}`.
    Pyramid,
    /// JSON list of factors.
    Composition,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[arg(long, value_enum)]
    from: Kind,
    #[arg(long, value_enum)]
    to: Kind,
    /// Piece length; taken from the document for pyramid input.
    #[arg(long)]
    a: Option<u32>,
    /// Convert the result back and fail unless it reproduces the input.
    #[arg(long)]
    round_trip: bool,
    /// text prints strings, walks and paths bare and the rest as JSON; json
    /// wraps every result in a versioned document.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Input, or `-` (the default) for stdin.
    input: Option<String>,
}

enum Obj {
    Bits(BitString),
    Walk(Walk),
    Path(LatticePath),
    Tree(PieceLength, AryTree),
    Pyramid(Pyramid),
    Composition(AdmissibleComposition),
}

#[derive(Deserialize)]
struct PyramidDoc {
    #[serde(default)]
    schema_version: Option<u32>,
    a: u32,
    pieces: Vec<(i64, u32)>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn steps_text(steps: &[Step]) -> String {
    steps
        .iter()
        .map(|s| if *s == Step::Right { 'R' } else { 'L' })
        .collect()
}

fn parse_steps(text: &str) -> CliResult<Vec<Step>> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| c.to_string().parse::<Step>().map_err(CliError::from))
        .collect()
}

fn factor_json(f: &CompositionFactor) -> Value {
    match f {
        CompositionFactor::P { index, steps } => json!({"letter": "P", "index": index, "steps": steps_text(steps)}),
        CompositionFactor::N { index, steps } => json!({"letter": "N", "index": index, "steps": steps_text(steps)}),
        CompositionFactor::T { from, to } => json!({"letter": "T", "from": from, "to": to}),
        CompositionFactor::U { from, to } => json!({"letter": "U", "from": from, "to": to}),
    }
}

fn factor_from_json(v: &Value) -> CliResult<CompositionFactor> {
    let bad = || usage(format!("malformed factor {v}"));
    let int = |key: &str| v.get(key).and_then(Value::as_i64).ok_or_else(bad);
    let steps = || -> CliResult<Vec<Step>> { parse_steps(v.get("steps").and_then(Value::as_str).ok_or_else(bad)?) };
    match v.get("letter").and_then(Value::as_str) {
        Some("P") => Ok(CompositionFactor::P {
            index: int("index")?,
            steps: steps()?,
        }),
        Some("N") => Ok(CompositionFactor::N {
            index: int("index")?,
            steps: steps()?,
        }),
        Some("T") => Ok(CompositionFactor::T {
            from: int("from")?,
            to: int("to")?,
        }),
        Some("U") => Ok(CompositionFactor::U {
            from: int("from")?,
            to: int("to")?,
        }),
        _ => Err(bad()),
    }
}

fn need_a(a: Option<u32>) -> CliResult<PieceLength> {
    piece_length(a.ok_or_else(|| usage("--a is required for this input"))?)
}

fn parse(kind: Kind, a: Option<u32>, text: &str) -> CliResult<Obj> {
    let text = text.trim();
    match kind {
        Kind::String => Ok(Obj::Bits(BitString::parse(need_a(a)?, text)?)),
        Kind::Walk => {
            let a = need_a(a)?;
            Ok(Obj::Walk(Walk::new(a, 0, parse_steps(text)?)))
        }
        Kind::Path => {
            let a = need_a(a)?;
            let steps = text
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    'U' | 'u' => Ok(PathStep::Up),
                    'D' | 'd' => Ok(PathStep::Down),
                    other => Err(usage(format!("unknown path step {other:?}"))),
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Obj::Path(LatticePath { a, steps }))
        }
        Kind::Tree => {
            let a = need_a(a)?;
            let tree: AryTree = serde_json::from_str(text).map_err(|e| usage(format!("tree: {e}")))?;
            tree.validate(a)?;
            Ok(Obj::Tree(a, tree))
        }
        Kind::Pyramid => {
            let doc: PyramidDoc = serde_json::from_str(text).map_err(|e| usage(format!("pyramid: {e}")))?;
            if let Some(v) = doc.schema_version {
                if v != SCHEMA_VERSION {
                    return Err(usage(format!("unsupported schema_version {v}")));
                }
            }
            if a.is_some_and(|x| x != doc.a) {
                return Err(usage(format!(
                    "--a {} disagrees with the document's a = {}",
                    a.unwrap(),
                    doc.a
                )));
            }
            let a = piece_length(doc.a)?;
            let pieces = doc.pieces.into_iter().map(Piece::from);
            Ok(Obj::Pyramid(Pyramid::from_pieces(a, pieces)?))
        }
        Kind::Composition => {
            let a = need_a(a)?;
            let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("composition: {e}")))?;
            let list = v
                .get("factors")
                .unwrap_or(&v)
                .as_array()
                .ok_or_else(|| usage("composition must be a list of factors"))?;
            let factors = list.iter().map(factor_from_json).collect::<CliResult<Vec<_>>>()?;
            let c = AdmissibleComposition { a, factors };
            c.validate()?;
            Ok(Obj::Composition(c))
        }
    }
}

fn to_bits(obj: &Obj) -> CliResult<BitString> {
    Ok(match obj {
        Obj::Bits(b) => b.clone(),
        Obj::Walk(w) => walk_to_string(w),
        Obj::Path(p) => walk_to_string(&path_to_walk(p)),
        Obj::Tree(a, t) => walk_to_string(&path_to_walk(&tree_to_dyck(t, *a)?)),
        Obj::Pyramid(p) => {
            if p.a().get() == 2 {
                encode_pyramid_a2(p)?
            } else if p.is_right_pyramid(0) {
                right_pyramid_to_string(p)?
            } else {
                return Err(no_full_codec(p.a()));
            }
        }
        Obj::Composition(c) => walk_to_string(&compose_admissible(c)?),
    })
}

fn no_full_codec(a: PieceLength) -> CliError {
    usage(format!(
        "a = {a}: only right 0-pyramids have a string code here; the pyramid/string bijection for all pyramids exists for a = 2 only"
    ))
}

fn from_bits(bits: &BitString, kind: Kind) -> CliResult<Obj> {
    let a = bits.a;
    Ok(match kind {
        Kind::String => Obj::Bits(bits.clone()),
        Kind::Walk => Obj::Walk(string_to_walk(bits)),
        Kind::Path => Obj::Path(walk_to_path(&string_to_walk(bits))),
        Kind::Tree => Obj::Tree(a, dyck_to_tree(&walk_to_path(&string_to_walk(bits)))?),
        Kind::Pyramid => {
            if a.get() == 2 {
                Obj::Pyramid(decode_pyramid_a2(bits)?)
            } else {
                Obj::Pyramid(string_to_right_pyramid(bits).map_err(|e| match e {
                    pyramids::Error::NotPositive(_) => no_full_codec(a),
                    other => other.into(),
                })?)
            }
        }
        Kind::Composition => Obj::Composition(factorize_walk(&string_to_walk(bits))?),
    })
}

fn kind_of(obj: &Obj) -> Kind {
    match obj {
        Obj::Bits(_) => Kind::String,
        Obj::Walk(_) => Kind::Walk,
        Obj::Path(_) => Kind::Path,
        Obj::Tree(..) => Kind::Tree,
        Obj::Pyramid(_) => Kind::Pyramid,
        Obj::Composition(_) => Kind::Composition,
    }
}

fn a_of(obj: &Obj) -> u32 {
    match obj {
        Obj::Bits(b) => b.a.get(),
        Obj::Walk(w) => w.a.get(),
        Obj::Path(p) => p.a.get(),
        Obj::Tree(a, _) => a.get(),
        Obj::Pyramid(p) => p.a().get(),
        Obj::Composition(c) => c.a.get(),
    }
}

fn value(obj: &Obj) -> Value {
    match obj {
        Obj::Bits(b) => Value::String(b.to_string()),
        Obj::Walk(w) => Value::String(steps_text(&w.steps)),
        Obj::Path(p) => Value::String(
            p.steps
                .iter()
                .map(|s| if *s == PathStep::Up { 'U' } else { 'D' })
                .collect(),
        ),
        Obj::Tree(_, t) => serde_json::to_value(t).expect("trees serialize"),
        Obj::Pyramid(p) => json!({
            "schema_version": SCHEMA_VERSION,
            "a": p.a().get(),
            "pieces": output::piece_list(p.pieces()),
        }),
        Obj::Composition(c) => json!({
            "schema_version": SCHEMA_VERSION,
            "a": c.a.get(),
            "word": c.word(),
            "factors": c.factors.iter().map(factor_json).collect::<Vec<_>>(),
        }),
    }
}

fn render(obj: &Obj, format: Format) -> String {
    match (format, value(obj)) {
        (Format::Json, v) => output::json(&json!({
            "schema_version": SCHEMA_VERSION,
            "kind": kind_of(obj),
            "a": a_of(obj),
            "value": v,
        })),
        (_, Value::String(s)) => format!("{s}\n"),
        (_, v) => output::json(&v),
    }
}

pub fn run(args: &ConvertArgs) -> CliResult<String> {
    let text = match args.input.as_deref() {
        Some(s) if s != "-" => s.to_string(),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            s
        }
    };
    let source = parse(args.from, args.a, &text)?;
    let target = from_bits(&to_bits(&source)?, args.to)?;
    let out = render(&target, args.format);
    if args.round_trip {
        let back = from_bits(&to_bits(&target)?, args.from)?;
        let (x, y) = (render(&source, Format::Json), render(&back, Format::Json));
        if x != y {
            print!("{out}");
            return Err(CliError::Failed(format!(
                "round trip changed the input:\n{x}became\n{y}"
            )));
        }
        eprintln!("round trip: identical");
    }
    Ok(out)
}
