use std::io::Write;

use ncbinom::binomial::{build_b, BinomialSpec};
use ncbinom::rewrite::{normalize, PresetName, RelationPreset};
use serde_json::json;

use crate::{CliResult, ExpandArgs, Format, EXIT_PASS};

/// Prints the normal form of `B(n)` under the preset; with `free` that is
/// the plain expansion.
pub fn run(args: &ExpandArgs, out: &mut dyn Write) -> CliResult {
    let preset = RelationPreset::build(args.preset, &args.lambda, Some(&args.mu));
    let spec = match args.preset {
        PresetName::PartialVW => {
            let u = &preset.generator("V")? + &preset.generator("W")?;
            BinomialSpec::from_polys(args.n, &args.lambda, u, preset.generator("D")?)?
        }
        _ => BinomialSpec::new(args.n, &args.lambda, preset.alphabet())?,
    };
    let free = build_b(&spec);
    let normal = normalize(&free, &preset)?;
    match args.format {
        Format::Text => writeln!(out, "{normal}")?,
        Format::Json => {
            let value = json!({
                "n": args.n,
                "lambda": args.lambda.to_string(),
                "preset": args.preset.as_str(),
                "free": free.to_string(),
                "normal": normal.to_string(),
                "terms": normal,
            });
            writeln!(out, "{value}")?
        }
    }
    Ok(EXIT_PASS)
}
