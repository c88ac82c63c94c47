//! Text file formats.
//!
//! ```text
//! cube <n>                 code <n>            lattice <n> <P_1> .. <P_n>     cayleyz <P> <s_1> .. <s_k>
//! <2^n signs>              <codeword>          <prod P_i signs>               <P signs>
//!                          ...
//! ```
//!
//! Signs are `+` or `-`. Codewords are `0/1` strings with coordinate `i` at
//! character `i - 1`. Blank lines after the body are ignored.

use crate::cayley::CayleyZFunction;
use crate::codes::BinaryCode;
use crate::cube::CubeFunction;
use crate::error::{Error, Result};
use crate::lattice::PeriodicLatticeFunction;

pub fn write_cube(f: &CubeFunction) -> String {
    format!("cube {}\n{}\n", f.n(), f.to_sign_string())
}

pub fn write_code(code: &BinaryCode) -> String {
    let mut out = format!("code {}\n", code.n());
    for w in code.words() {
        out.push_str(&code.word_string(w));
        out.push('\n');
    }
    out
}

pub fn write_lattice(g: &PeriodicLatticeFunction) -> String {
    let periods: Vec<String> = g.periods().iter().map(ToString::to_string).collect();
    format!("lattice {} {}\n{}\n", g.n(), periods.join(" "), g.to_sign_string())
}

pub fn write_cayley(f: &CayleyZFunction) -> String {
    let gens: Vec<String> = f.generators().iter().map(ToString::to_string).collect();
    format!("cayleyz {} {}\n{f}\n", f.period(), gens.join(" "))
}

/// Non-blank lines with their 1-based numbers, trailing blanks dropped.
fn lines(text: &str) -> Vec<(usize, &str)> {
    let mut out: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end())).collect();
    while out.last().is_some_and(|(_, l)| l.is_empty()) {
        out.pop();
    }
    out
}

/// Header words with their 1-based columns.
fn header<'a>(line: &'a str, keyword: &str) -> Result<Vec<(usize, &'a str)>> {
    let mut words = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                words.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    match words.first() {
        Some(&(_, w)) if w == keyword => Ok(words[1..].to_vec()),
        Some(&(col, w)) => Err(Error::parse(1, col, format!("expected `{keyword}`, found `{w}`"))),
        None => Err(Error::parse(1, 1, format!("expected `{keyword}` header"))),
    }
}

fn number<T: std::str::FromStr>(word: (usize, &str), what: &str) -> Result<T> {
    word.1
        .parse()
        .map_err(|_| Error::parse(1, word.0, format!("invalid {what} `{}`", word.1)))
}

fn signs(line_no: usize, line: &str, expected: usize) -> Result<Vec<i8>> {
    let mut out = Vec::with_capacity(expected);
    for (i, c) in line.chars().enumerate() {
        match c {
            '+' => out.push(1),
            '-' => out.push(-1),
            _ => return Err(Error::parse(line_no, i + 1, format!("expected `+` or `-`, found `{c}`"))),
        }
    }
    if out.len() != expected {
        return Err(Error::parse(
            line_no,
            out.len().min(expected) + 1,
            format!("expected {expected} signs, found {}", out.len()),
        ));
    }
    Ok(out)
}

/// Header line and exactly one body line.
fn two_lines(text: &str) -> Result<(&str, (usize, &str))> {
    let ls = lines(text);
    let Some(&(_, head)) = ls.first() else {
        return Err(Error::parse(1, 1, "empty file"));
    };
    let Some(&body) = ls.get(1) else {
        return Err(Error::parse(2, 1, "missing sign line"));
    };
    if let Some(&(extra, _)) = ls.get(2) {
        return Err(Error::parse(extra, 1, "unexpected content after sign line"));
    }
    Ok((head, body))
}

fn expect_args(words: &[(usize, &str)], count: usize, head: &str) -> Result<()> {
    if words.len() < count {
        return Err(Error::parse(1, head.len() + 1, "header is missing fields"));
    }
    if let Some(&(col, _)) = words.get(count) {
        return Err(Error::parse(1, col, "unexpected header field"));
    }
    Ok(())
}

pub fn parse_cube(text: &str) -> Result<CubeFunction> {
    let (head, (line_no, body)) = two_lines(text)?;
    let words = header(head, "cube")?;
    expect_args(&words, 1, head)?;
    let n: usize = number(words[0], "dimension")?;
    if n == 0 || n > crate::cube::MAX_DIM {
        return Err(Error::parse(1, words[0].0, format!("dimension {n} outside 1..={}", crate::cube::MAX_DIM)));
    }
    CubeFunction::from_table(n, signs(line_no, body, 1 << n)?)
}

pub fn parse_code(text: &str) -> Result<BinaryCode> {
    let ls = lines(text);
    let Some(&(_, head)) = ls.first() else {
        return Err(Error::parse(1, 1, "empty file"));
    };
    let words = header(head, "code")?;
    expect_args(&words, 1, head)?;
    let n: usize = number(words[0], "length")?;
    if n == 0 || n > 63 {
        return Err(Error::parse(1, words[0].0, format!("length {n} outside 1..=63")));
    }
    let mut codewords = Vec::new();
    for &(line_no, line) in &ls[1..] {
        let mut w = 0u64;
        let mut len = 0;
        for (i, c) in line.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i < n => w |= 1 << i,
                '1' => {}
                _ => return Err(Error::parse(line_no, i + 1, format!("expected `0` or `1`, found `{c}`"))),
            }
            len += 1;
        }
        if len != n {
            return Err(Error::parse(line_no, len.min(n) + 1, format!("expected {n} bits, found {len}")));
        }
        codewords.push(w);
    }
    BinaryCode::new(n, codewords)
}

pub fn parse_lattice(text: &str) -> Result<PeriodicLatticeFunction> {
    let (head, (line_no, body)) = two_lines(text)?;
    let words = header(head, "lattice")?;
    if words.is_empty() {
        return Err(Error::parse(1, head.len() + 1, "header is missing fields"));
    }
    let n: usize = number(words[0], "dimension")?;
    if n == 0 || n > 24 {
        return Err(Error::parse(1, words[0].0, format!("dimension {n} outside 1..=24")));
    }
    expect_args(&words, n + 1, head)?;
    let mut periods = Vec::with_capacity(n);
    let mut size = 1usize;
    for &word in &words[1..] {
        let p: usize = number(word, "period")?;
        size = size
            .checked_mul(p)
            .filter(|&s| p > 0 && s <= crate::lattice::MAX_CELLS)
            .ok_or_else(|| Error::parse(1, word.0, "period must be positive and the cell at most 2^24"))?;
        periods.push(p);
    }
    PeriodicLatticeFunction::new(periods, signs(line_no, body, size)?)
}

pub fn parse_cayley(text: &str) -> Result<CayleyZFunction> {
    let (head, (line_no, body)) = two_lines(text)?;
    let words = header(head, "cayleyz")?;
    if words.len() < 2 {
        return Err(Error::parse(1, head.len() + 1, "header needs a period and generators"));
    }
    let period: usize = number(words[0], "period")?;
    if period == 0 || period > crate::lattice::MAX_CELLS {
        return Err(Error::parse(1, words[0].0, "period must be positive"));
    }
    let gens = words[1..]
        .iter()
        .map(|&w| number::<u64>(w, "generator"))
        .collect::<Result<Vec<_>>>()?;
    CayleyZFunction::new(&gens, signs(line_no, body, period)?)
}
