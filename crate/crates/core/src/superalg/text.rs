//! Textual element format.
//!
//! ```text
//! element  := "0" | term ("+" term)*
//! term     := ["(" scalar ")" "*"] body
//! body     := letters                                  (free elements)
//!           | fword "|" kblock "|" sblock "|" eword    (normal forms)
//! letters  := "1" | letter ("." letter)*
//! letter   := ("e" | "f" | "s") label | "k" label ["^" int]
//! fword    := "1" | "f" label ("." "f" label)*
//! kblock   := "1" | "k" label "^" int (" " "k" label "^" int)*
//! sblock   := "1" | "s" label (" " "s" label)*
//! eword    := "1" | "e" label ("." "e" label)*
//! ```
//!
//! Labels are node labels (0 is the affine node). Coefficients are scalar
//! expressions as accepted by [`QScalar`]'s parser and must be parenthesised.

use super::{add_into, Ctx, FreeElement, Letter, Monomial, NormalForm, Word};
use crate::error::{Error, Result};
use crate::qfield::QScalar;

impl Ctx {
    pub fn format_letter(&self, l: Letter) -> String {
        match l {
            Letter::E(i) => format!("e{}", self.label(i)),
            Letter::F(i) => format!("f{}", self.label(i)),
            Letter::K(i) => format!("k{}", self.label(i)),
            Letter::KInv(i) => format!("k{}^-1", self.label(i)),
            Letter::S(i) => format!("s{}", self.label(i)),
        }
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| self.format_letter(l)).collect::<Vec<_>>().join(".")
    }

    pub fn format_free(&self, x: &FreeElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms()
            .iter()
            .map(|(w, c)| format!("({c}) * {}", self.format_word(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let word = |prefix: char, v: &[u8]| {
            if v.is_empty() {
                "1".to_string()
            } else {
                v.iter().map(|&i| format!("{prefix}{}", self.label(i))).collect::<Vec<_>>().join(".")
            }
        };
        let ks: Vec<String> = m
            .k
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, a)| format!("k{}^{a}", self.label(i as u8)))
            .collect();
        let ss: Vec<String> =
            (0..self.rank()).filter(|&i| m.s >> i & 1 == 1).map(|i| format!("s{}", self.label(i as u8))).collect();
        let or_one = |v: Vec<String>| if v.is_empty() { "1".to_string() } else { v.join(" ") };
        format!("{} | {} | {} | {}", word('f', &m.f), or_one(ks), or_one(ss), word('e', &m.e))
    }

    pub fn format_normal(&self, x: &NormalForm) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms()
            .iter()
            .map(|(m, c)| format!("({c}) * {}", self.format_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse_free(&self, s: &str) -> Result<FreeElement> {
        let mut out = FreeElement::zero();
        for (c, body) in split_terms(s)? {
            out.add_term(self.parse_letters(body)?, c);
        }
        Ok(out)
    }

    pub fn parse_normal(&self, s: &str) -> Result<NormalForm> {
        let mut out = NormalForm::zero(self);
        for (c, body) in split_terms(s)? {
            let m = self.parse_monomial(body)?;
            add_into(&mut out.terms, m, c);
        }
        Ok(out)
    }

    fn node(&self, label: &str) -> Result<u8> {
        let l: usize = label.parse().map_err(|_| Error::Parse(format!("bad node label {label:?}")))?;
        self.node_of_label(l).ok_or_else(|| Error::UnknownGenerator(format!("node {l}")))
    }

    fn parse_letter(&self, tok: &str) -> Result<Letter> {
        let tok = tok.trim();
        let (head, rest) = tok.split_at(tok.chars().next().map_or(0, char::len_utf8));
        match head {
            "e" => Ok(Letter::E(self.node(rest)?)),
            "f" => Ok(Letter::F(self.node(rest)?)),
            "s" => Ok(Letter::S(self.node(rest)?)),
            "k" => match rest.split_once('^') {
                None => Ok(Letter::K(self.node(rest)?)),
                Some((l, "1")) => Ok(Letter::K(self.node(l)?)),
                Some((l, "-1")) => Ok(Letter::KInv(self.node(l)?)),
                Some(_) => Err(Error::Parse(format!("letter {tok:?}: use k^1 or k^-1"))),
            },
            _ => Err(Error::Parse(format!("unknown letter {tok:?}"))),
        }
    }

    fn parse_letters(&self, body: &str) -> Result<Word> {
        let body = body.trim();
        if body == "1" {
            return Ok(Vec::new());
        }
        body.split('.').map(|t| self.parse_letter(t)).collect()
    }

    fn parse_monomial(&self, body: &str) -> Result<Monomial> {
        let blocks: Vec<&str> = body.split('|').map(str::trim).collect();
        if blocks.len() != 4 {
            return Err(Error::Parse(format!("expected four blocks in {body:?}")));
        }
        let mut m = Monomial::unit(self.rank());
        let word = |b: &str, want: fn(Letter) -> Option<u8>| -> Result<Vec<u8>> {
            self.parse_letters(b)?
                .into_iter()
                .map(|l| want(l).ok_or_else(|| Error::Parse(format!("wrong block for {l:?}"))))
                .collect()
        };
        m.f = word(blocks[0], |l| if let Letter::F(i) = l { Some(i) } else { None })?;
        m.e = word(blocks[3], |l| if let Letter::E(i) = l { Some(i) } else { None })?;
        if blocks[1] != "1" {
            for tok in blocks[1].split_whitespace() {
                let (l, a) = tok
                    .strip_prefix('k')
                    .and_then(|t| t.split_once('^'))
                    .ok_or_else(|| Error::Parse(format!("bad k factor {tok:?}")))?;
                let a: i32 = a.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
                m.k[self.node(l)? as usize] += a;
            }
        }
        if blocks[2] != "1" {
            for tok in blocks[2].split_whitespace() {
                match self.parse_letter(tok)? {
                    Letter::S(i) => m.s ^= 1 << i,
                    _ => return Err(Error::Parse(format!("bad σ factor {tok:?}"))),
                }
            }
        }
        Ok(m)
    }
}

/// Splits on top-level `+` and peels an optional `(coef) *` prefix.
fn split_terms(s: &str) -> Result<Vec<(QScalar, &str)>> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse("unbalanced parentheses".into()));
        }
    }
    parts.push(&s[start..]);
    parts
        .into_iter()
        .map(|p| {
            let p = p.trim();
            if let Some(rest) = p.strip_prefix('(') {
                let mut depth = 1;
                let close = rest
                    .char_indices()
                    .find(|&(_, ch)| {
                        match ch {
                            '(' => depth += 1,
                            ')' => depth -= 1,
                            _ => {}
                        }
                        depth == 0
                    })
                    .map(|(i, _)| i)
                    .ok_or_else(|| Error::Parse("unbalanced parentheses".into()))?;
                let coef: QScalar = rest[..close].parse()?;
                let body = rest[close + 1..]
                    .trim_start()
                    .strip_prefix('*')
                    .ok_or_else(|| Error::Parse(format!("expected '*' after coefficient in {p:?}")))?;
                Ok((coef, body.trim()))
            } else {
                Ok((QScalar::one(), p))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::tests::ctx;
    use super::*;
    use crate::rootdata::Algebra;

    #[test]
    fn normal_form_round_trip() {
        let c = ctx(Algebra::OspAff2, 1, 1, "de", 1);
        let x = c.parse_free("(q + 1) * e1.f0.s2.k0^-1.f1 + (-3/q) * e2.e0").unwrap();
        let nf = c.normalize(&x);
        let text = c.format_normal(&nf);
        assert_eq!(c.parse_normal(&text).unwrap(), nf);
        assert_eq!(c.normalize(&c.parse_free(&c.format_free(&x)).unwrap()), nf);
    }

    #[test]
    fn documented_example_parses() {
        let c = ctx(Algebra::OspOdd, 2, 1, "ede", 1);
        let nf = c.parse_normal("(2) * f1.f2 | k1^1 k2^-2 | s1 s3 | e2.e1").unwrap();
        let (m, coef) = nf.as_single().unwrap();
        assert_eq!(coef, &QScalar::from_int(2));
        assert_eq!(m.f, vec![0, 1]);
        assert_eq!(m.k, vec![1, -2, 0]);
        assert_eq!(m.s, 0b101);
        assert_eq!(m.e, vec![1, 0]);
    }

    #[test]
    fn bad_input_rejected() {
        let c = ctx(Algebra::OspOdd, 1, 1, "ed", 1);
        assert!(c.parse_free("e9").is_err());
        assert!(c.parse_free("x1").is_err());
        assert!(c.parse_normal("f1 | 1 | 1").is_err());
        assert!(c.parse_normal("(q * e1").is_err());
    }
}
