//! Text formats for fields, codes and quadratic forms.
//!
//! Field tags name a field by its construction: `p^e` is GF(p^e) with the
//! default modulus, and each `/m` suffix is a degree-m extension of the field
//! to its left, again with the default modulus.
//!
//! Code files:
//!
//! ```text
//! repr=matrix q=2 m=4 n=2 k=2
//! 1 1 0 0 0 0 0 0
//! 0 0 1 1 0 0 0 0
//! ```
//!
//! Form files: `N=<N> field=<tag>` and then the `N(N+1)/2` upper-triangular
//! coefficients in row order, separated by any whitespace.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quadratic::QuadraticForm;
use crate::rank_metric::{Ambient, LinearCode, Repr};

pub fn field_tag(field: &Field) -> String {
    match field.base() {
        Some(base) if !base.is_prime_field() => {
            let m = field.modulus().len() - 1;
            format!("{}/{}", field_tag(base), m)
        }
        _ => format!("{}^{}", field.characteristic(), field.prime_degree()),
    }
}

pub fn parse_field_tag(tag: &str) -> Result<Field> {
    let mut parts = tag.split('/');
    let head = parts.next().unwrap_or_default();
    let (p, e) = head
        .split_once('^')
        .ok_or_else(|| Error::format(format!("expected <p>^<e>, got {head:?}")))?;
    let p = parse_num::<u32>(p, "prime")?;
    let e = parse_num::<u32>(e, "exponent")?;
    let mut field = Field::prime_power(p, e)?;
    for m in parts {
        let m = parse_num::<u32>(m, "extension degree")?;
        field = Field::extension(Arc::new(field), m)?;
    }
    Ok(field)
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::format(format!("bad {what} {s:?}")))
}

fn parse_header(line: &str, keys: &[&str]) -> Result<Vec<String>> {
    let mut values = vec![None; keys.len()];
    for tok in line.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::format(format!("expected key=value, got {tok:?}")))?;
        let i = keys
            .iter()
            .position(|&key| key == k)
            .ok_or_else(|| Error::format(format!("unknown header key {k:?}")))?;
        if values[i].replace(v.to_string()).is_some() {
            return Err(Error::format(format!("duplicate header key {k:?}")));
        }
    }
    keys.iter()
        .zip(values)
        .map(|(k, v)| v.ok_or_else(|| Error::format(format!("missing header key {k:?}"))))
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

pub fn write_code(code: &LinearCode) -> String {
    let amb = code.ambient();
    let mut out = format!(
        "repr={} q={} m={} n={} k={}\n",
        amb.repr(),
        amb.q(),
        amb.m(),
        amb.n(),
        code.dim()
    );
    for w in code.basis() {
        let entries: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a code file. The basis must be linearly independent.
pub fn read_code(text: &str) -> Result<LinearCode> {
    let (ambient, words) = read_code_words(text)?;
    LinearCode::new(ambient, words)
}

/// Parses a code file without checking the words for independence.
pub fn read_code_words(text: &str) -> Result<(Ambient, Vec<Vec<u32>>)> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| Error::format("empty code file"))?;
    let h = parse_header(header, &["repr", "q", "m", "n", "k"])?;
    let repr: Repr = h[0].parse()?;
    let q = parse_num::<u32>(&h[1], "q")?;
    let m = parse_num::<usize>(&h[2], "m")?;
    let n = parse_num::<usize>(&h[3], "n")?;
    let k = parse_num::<usize>(&h[4], "k")?;
    let ambient = Ambient::from_params(repr, q, n, m)?;
    let words = lines
        .map(|l| {
            let w = l
                .split_whitespace()
                .map(|t| parse_num::<u32>(t, "entry"))
                .collect::<Result<Vec<u32>>>()?;
            ambient
                .check_word(&w)
                .map_err(|e| Error::format(format!("bad word {l:?}: {e}")))?;
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    if words.len() != k {
        return Err(Error::format(format!(
            "header says k={k} but {} words follow",
            words.len()
        )));
    }
    Ok((ambient, words))
}

pub fn write_form(form: &QuadraticForm) -> String {
    form.to_string()
}

pub fn read_form(text: &str) -> Result<QuadraticForm> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| Error::format("empty form file"))?;
    let h = parse_header(header, &["N", "field"])?;
    let n = parse_num::<usize>(&h[0], "N")?;
    let field = Arc::new(parse_field_tag(&h[1])?);
    let coeffs = lines
        .flat_map(str::split_whitespace)
        .map(|t| parse_num::<u32>(t, "coefficient"))
        .collect::<Result<Vec<u32>>>()?;
    if coeffs.len() != n * (n + 1) / 2 {
        return Err(Error::format(format!(
            "expected {} coefficients for N={n}, got {}",
            n * (n + 1) / 2,
            coeffs.len()
        )));
    }
    QuadraticForm::new(field, n, coeffs).map_err(|e| Error::format(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ExtField;

    #[test]
    fn field_tags() {
        assert_eq!(field_tag(&Field::gf(5).unwrap()), "5^1");
        assert_eq!(field_tag(&Field::gf(8).unwrap()), "2^3");
        let gf16 = ExtField::from_q(4, 2).unwrap();
        assert_eq!(field_tag(gf16.field()), "2^2/2");
        for tag in ["5^1", "2^3", "2^2/2", "3^2/2/2"] {
            assert_eq!(field_tag(&parse_field_tag(tag).unwrap()), tag);
        }
        // an extension of a prime field is written in its canonical form
        assert_eq!(field_tag(&parse_field_tag("3^1/3").unwrap()), "3^3");
        assert_eq!(&parse_field_tag("2^2/2").unwrap(), &**gf16.field());
        assert!(parse_field_tag("6^1").is_err());
        assert!(parse_field_tag("2").is_err());
    }

    #[test]
    fn code_round_trip() {
        let amb = Ambient::from_params(Repr::Matrix, 2, 2, 4).unwrap();
        let code = LinearCode::new(
            amb,
            vec![vec![1, 1, 0, 0, 0, 0, 0, 0], vec![0, 0, 1, 1, 0, 0, 0, 0]],
        )
        .unwrap();
        let text = write_code(&code);
        assert_eq!(
            text,
            "repr=matrix q=2 m=4 n=2 k=2\n1 1 0 0 0 0 0 0\n0 0 1 1 0 0 0 0\n"
        );
        let back = read_code(&text).unwrap();
        assert_eq!(back, code);
        assert_eq!(back.basis(), code.basis());

        let vamb = Ambient::from_params(Repr::Vector, 2, 3, 2).unwrap();
        let vcode = LinearCode::new(vamb, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(read_code(&write_code(&vcode)).unwrap(), vcode);
    }

    #[test]
    fn code_format_errors() {
        let bad = [
            "",
            "repr=matrix q=2 m=4 n=2\n",
            "repr=matrix q=2 m=4 n=2 k=1 extra=1\n0 0 0 0 0 0 0 1\n",
            "repr=matrix q=2 m=4 n=2 k=2\n1 0 0 0 0 0 0 0\n",
            "repr=matrix q=2 m=4 n=2 k=1\n1 0 0\n",
            "repr=matrix q=2 m=4 n=2 k=1\n2 0 0 0 0 0 0 0\n",
            "repr=tensor q=2 m=4 n=2 k=0\n",
        ];
        for text in bad {
            assert_eq!(read_code(text).unwrap_err().code(), "E_FORMAT", "{text:?}");
        }
        let dependent = "repr=matrix q=2 m=2 n=2 k=2\n1 1 0 0\n1 1 0 0\n";
        assert!(read_code(dependent).is_err());
        assert_eq!(read_code_words(dependent).unwrap().1.len(), 2);
    }

    #[test]
    fn form_round_trip() {
        let f = QuadraticForm::new(Arc::new(Field::gf(3).unwrap()), 2, vec![1, 2, 0]).unwrap();
        let text = write_form(&f);
        assert_eq!(text, "N=2 field=3^1\n1 2 0\n");
        assert_eq!(read_form(&text).unwrap(), f);
        assert_eq!(read_form("# comment\nN=2 field=3^1\n1\n2 0\n").unwrap(), f);
        assert!(read_form("N=2 field=3^1\n1 2\n").is_err());
        assert!(read_form("N=2 field=3^1\n1 2 3\n").is_err());
    }
}
