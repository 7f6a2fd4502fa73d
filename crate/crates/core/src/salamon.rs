//! Salamon notation: `(0,0,-12,0)` lists de^1..de^n as sums of weighted index
//! pairs. Weights are rationals or parenthesized expressions followed by `·`
//! or `*`; `0^k` (or `0³`) repeats a zero slot; pairs above 9 are written `i.j`.

use hsx_exact::{ExactError, ExprParser, RatFun, Rational};

use crate::error::{CoreError, Result};
use crate::forms::signed_coeff;
use crate::lie::LieAlgebra;
use crate::Scalar;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next().map(|c| match c {
            '−' => '-',
            '·' => '*',
            c => c,
        })
    }

    /// Next character without skipping whitespace.
    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn err(&self, at: usize, msg: impl Into<String>) -> CoreError {
        CoreError::Syntax {
            offset: at,
            message: msg.into(),
        }
    }

    /// A run of decimal digits; interior whitespace is ignored.
    fn digits(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        let mut out = String::new();
        loop {
            let save = self.pos;
            self.skip_ws();
            match self.peek_raw() {
                Some(c) if c.is_ascii_digit() => {
                    out.push(c);
                    self.bump();
                }
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        (!out.is_empty()).then_some((start, out))
    }
}

fn superscript(c: char) -> Option<usize> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|d| d == c)
}

enum Slot {
    Zeros(usize),
    Terms(Vec<(usize, usize, usize, Scalar)>),
}

fn expr_error(e: ExactError) -> CoreError {
    match e {
        ExactError::ParseExpr { offset, message } => CoreError::Syntax { offset, message },
        other => CoreError::Exact(other),
    }
}

/// Splits at top-level commas so the dimension is known before pairs are
/// read. Returns byte ranges.
fn slot_ranges(src: &str, start: usize, end: usize) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut from = start;
    for (off, c) in src[start..end].char_indices() {
        let at = start + off;
        match c {
            '(' => depth += 1,
            ')' => {
                if depth == 0 {
                    return Err(CoreError::Syntax {
                        offset: at,
                        message: "unbalanced ')'".into(),
                    });
                }
                depth -= 1;
            }
            ',' if depth == 0 => {
                out.push((from, at));
                from = at + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(CoreError::Syntax {
            offset: end,
            message: "unclosed '('".into(),
        });
    }
    out.push((from, end));
    Ok(out)
}

fn parse_slot(src: &str, range: (usize, usize)) -> Result<Slot> {
    let mut cur = Cursor {
        src: &src[..range.1],
        pos: range.0,
    };
    if cur.peek().is_none() {
        return Err(cur.err(cur.pos, "empty slot"));
    }
    // zero slot or 0^k
    let save = cur.pos;
    if let Some((at, ds)) = cur.digits() {
        if ds == "0" {
            match cur.peek() {
                None => return Ok(Slot::Zeros(1)),
                Some('^') => {
                    cur.bump();
                    let Some((kat, k)) = cur.digits() else {
                        return Err(cur.err(cur.pos, "expected repeat count after '^'"));
                    };
                    let k: usize = k.parse().map_err(|_| cur.err(kat, "repeat count too large"))?;
                    if k == 0 {
                        return Err(cur.err(kat, "repeat count must be positive"));
                    }
                    if cur.peek().is_some() {
                        return Err(cur.err(cur.pos, "unexpected input after 0^k"));
                    }
                    return Ok(Slot::Zeros(k));
                }
                Some(c) if superscript(c).is_some() => {
                    let kat = cur.pos;
                    let mut k = 0usize;
                    while let Some(d) = cur.peek_raw().and_then(superscript) {
                        k = k.checked_mul(10).and_then(|k| k.checked_add(d)).ok_or_else(|| cur.err(kat, "repeat count too large"))?;
                        cur.bump();
                    }
                    if k == 0 {
                        return Err(cur.err(kat, "repeat count must be positive"));
                    }
                    if cur.peek().is_some() {
                        return Err(cur.err(cur.pos, "unexpected input after 0^k"));
                    }
                    return Ok(Slot::Zeros(k));
                }
                _ => return Err(cur.err(at, "index pairs cannot start with 0")),
            }
        }
    }
    cur.pos = save;
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = Rational::one();
        match cur.peek() {
            Some('-') => {
                cur.bump();
                sign = -sign;
            }
            Some('+') => cur.bump(),
            None if !first => return Err(cur.err(cur.pos, "dangling sign")),
            _ if !first => return Err(cur.err(cur.pos, "expected '+' or '-'")),
            _ => {}
        }
        let (weight, i, j, at) = parse_term(&mut cur)?;
        terms.push((i, j, at, weight.scale(&sign)));
        first = false;
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(Slot::Terms(terms))
}

/// One `[weight·]pair`, returning 1-based indices and the pair offset.
fn parse_term(cur: &mut Cursor) -> Result<(Scalar, usize, usize, usize)> {
    let mut weight = RatFun::one();
    match cur.peek() {
        Some('(') => {
            let open = cur.pos;
            let close = matching_close(cur.src, open);
            let close = close.ok_or_else(|| cur.err(open, "unclosed '('"))?;
            let inner = &cur.src[open + 1..close];
            let mut p = ExprParser::new(inner, open + 1);
            weight = p.expr().map_err(expr_error)?;
            if !inner[p.position()..].trim().is_empty() {
                return Err(cur.err(open + 1 + p.position(), "trailing input in weight"));
            }
            cur.pos = close + 1;
            expect_times(cur)?;
        }
        Some(c) if c.is_ascii_digit() => {
            let save = cur.pos;
            let (at, ds) = cur.digits().expect("digit present");
            match cur.peek() {
                Some('/') => {
                    cur.bump();
                    let Some((_, den)) = cur.digits() else {
                        return Err(cur.err(cur.pos, "expected denominator"));
                    };
                    let q: Rational = format!("{ds}/{den}")
                        .parse()
                        .map_err(|_| cur.err(at, "zero denominator"))?;
                    weight = RatFun::from_rational(q);
                    expect_times(cur)?;
                }
                Some('*') => {
                    weight = RatFun::from_rational(ds.parse().expect("decimal digits"));
                    expect_times(cur)?;
                }
                _ => cur.pos = save,
            }
        }
        Some(c) => return Err(cur.err(cur.pos, format!("unexpected character {c:?}"))),
        None => return Err(cur.err(cur.pos, "expected an index pair")),
    }
    let (i, j, at) = parse_pair(cur)?;
    Ok((weight, i, j, at))
}

fn expect_times(cur: &mut Cursor) -> Result<()> {
    match cur.peek() {
        Some('*') => {
            cur.bump();
            Ok(())
        }
        _ => Err(cur.err(cur.pos, "expected '·' or '*' after weight")),
    }
}

fn parse_pair(cur: &mut Cursor) -> Result<(usize, usize, usize)> {
    let Some((at, a)) = cur.digits() else {
        return Err(cur.err(cur.pos, "expected an index pair"));
    };
    if cur.peek() == Some('.') {
        cur.bump();
        let Some((bat, b)) = cur.digits() else {
            return Err(cur.err(cur.pos, "expected second index after '.'"));
        };
        let i = a.parse().map_err(|_| cur.err(at, "index too large"))?;
        let j = b.parse().map_err(|_| cur.err(bat, "index too large"))?;
        return Ok((i, j, at));
    }
    if a.len() != 2 {
        return Err(cur.err(
            at,
            format!("index pair {a:?} must be two digits or use the dotted form i.j"),
        ));
    }
    let b = a.as_bytes();
    Ok(((b[0] - b'0') as usize, (b[1] - b'0') as usize, at))
}

/// Parses structure equations and checks the Jacobi identity.
pub fn parse_salamon(text: &str) -> Result<LieAlgebra> {
    let g = parse_salamon_unchecked(text)?;
    LieAlgebra::from_constants(g.dim(), g.constants().map(|(&(k, i, j), v)| (k, i, j, v.clone())))
}

fn matching_close(text: &str, open: usize) -> Option<usize> {
    let mut depth = 0usize;
    for (off, c) in text[open..].char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(open + off);
                }
            }
            _ => {}
        }
    }
    None
}

/// Parses without the Jacobi check.
pub fn parse_salamon_unchecked(text: &str) -> Result<LieAlgebra> {
    let mut cur = Cursor { src: text, pos: 0 };
    let trimmed_end = text.trim_end().len();
    let (start, end) = match cur.peek() {
        None => return Err(cur.err(0, "empty input")),
        Some('(') if matching_close(text, cur.pos) == Some(trimmed_end - 1) => {
            (cur.pos + 1, trimmed_end - 1)
        }
        Some(_) => (cur.pos, trimmed_end),
    };
    let ranges = slot_ranges(text, start, end)?;
    let slots = ranges
        .iter()
        .map(|&r| parse_slot(text, r))
        .collect::<Result<Vec<_>>>()?;
    let dim: usize = slots
        .iter()
        .map(|s| match s {
            Slot::Zeros(k) => *k,
            Slot::Terms(_) => 1,
        })
        .sum();
    let mut consts = Vec::new();
    let mut k = 0;
    for s in slots {
        match s {
            Slot::Zeros(n) => k += n,
            Slot::Terms(terms) => {
                for (i, j, at, w) in terms {
                    for x in [i, j] {
                        if x == 0 || x > dim {
                            return Err(CoreError::IndexRange {
                                index: x,
                                dim,
                                offset: at,
                            });
                        }
                    }
                    if i == j {
                        return Err(CoreError::Syntax {
                            offset: at,
                            message: format!("repeated index in pair {i},{j}"),
                        });
                    }
                    consts.push((k, i - 1, j - 1, w));
                }
                k += 1;
            }
        }
    }
    LieAlgebra::from_constants_unchecked(dim, consts)
}

/// Canonical text: pairs in lex order, non-constant weights in parentheses,
/// `*` for products, dotted pairs above dimension 9.
pub fn print_salamon(g: &LieAlgebra) -> String {
    let dim = g.dim();
    let slots: Vec<String> = (0..dim)
        .map(|k| {
            let de = g.de(k);
            if de.is_zero() {
                return "0".to_string();
            }
            let mut s = String::new();
            for (n, (idx, c)) in de.terms().enumerate() {
                let (neg, body) = signed_coeff(c);
                if neg {
                    s.push('-');
                } else if n > 0 {
                    s.push('+');
                }
                s.push_str(&body);
                if dim > 9 {
                    s.push_str(&format!("{}.{}", idx[0] + 1, idx[1] + 1));
                } else {
                    s.push_str(&format!("{}{}", idx[0] + 1, idx[1] + 1));
                }
            }
            s
        })
        .collect();
    format!("({})", slots.join(","))
}
