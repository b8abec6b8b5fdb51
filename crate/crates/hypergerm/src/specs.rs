//! Command-line argument formats that need the filesystem or are shared by
//! several subcommands.

use std::fs;
use std::path::Path;

use hypergerm_core::hindman::Coloring;
use hypergerm_core::{BigReal, Config, Error, Result};
use num_bigint::BigInt;

/// `mod:<m>`, `expr:<expression in n>` or `table:<path>`, the last naming a
/// file of newline-separated integers.
pub fn parse_coloring(spec: &str) -> Result<Coloring> {
    match spec.trim().strip_prefix("table:") {
        Some(path) => Coloring::table_from_text(&read_file(Path::new(path))?),
        None => Coloring::parse(spec),
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {}", path.display(), e)))
}

pub fn parse_positive(text: &str) -> Result<BigInt> {
    let n: BigInt = text.trim().parse().map_err(|_| Error::InvalidInput(format!("`{}` is not an integer", text)))?;
    if n <= BigInt::from(0) {
        return Err(Error::InvalidInput(format!("{} is not positive", n)));
    }
    Ok(n)
}

/// Comma- or space-separated positive integers.
pub fn parse_int_list(text: &str) -> Result<Vec<BigInt>> {
    let items: Vec<BigInt> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_positive)
        .collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(Error::InvalidInput("empty list".into()));
    }
    Ok(items)
}

pub fn parse_real(text: &str, cfg: &Config) -> Result<BigReal> {
    BigReal::parse_decimal(text.trim(), cfg.precision)
        .ok_or_else(|| Error::InvalidInput(format!("`{}` is not a decimal number", text)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn lists_and_numbers() {
        let ns = parse_int_list("2, 5,13").unwrap();
        assert_eq!(ns, [2.into(), 5.into(), 13.into()]);
        assert!(parse_int_list("2,-1").is_err());
        assert!(parse_int_list(" , ").is_err());
        assert!(parse_positive("0").is_err());
        let c = Config::default();
        assert_eq!(parse_real("0.5", &c).unwrap(), BigReal::one(c.precision).mul_pow2(-1));
        assert!(parse_real("half", &c).is_err());
    }

    #[test]
    fn table_colorings_come_from_files() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "0\n1\n0").unwrap();
        let spec = format!("table:{}", f.path().display());
        let c = parse_coloring(&spec).unwrap();
        assert_eq!(c.color(2, &Config::default()).unwrap(), 1.into());
        assert!(matches!(parse_coloring("table:/no/such/file"), Err(Error::InvalidInput(_))));
        assert_eq!(parse_coloring("mod:4").unwrap(), Coloring::Modular(4));
    }
}
