//! Line-oriented diagram file format.
//!
//! ```text
//! netmap v1
//! lambda1 = (0, -1)
//! lambda2 = (2, 1)
//! translate = l2
//! push 0 -> (1, 0)
//! push l1 -> (1, -1)
//! push l2 -> l2
//! push l1+l2 -> (2, 0)
//! ```
//!
//! `#` starts a comment and blank lines are ignored. A push terminal may be
//! given as a dot token, which expands to that dot's coordinates.

use std::fmt::Write;

use num_bigint::BigInt;

use super::{DotIndex, GreenSegment, PresentationDiagram};
use crate::error::{Error, Result};
use crate::lattice::{IntMat2, IntVec2, Parity};

const HEADER: &str = "netmap v1";

fn selector_token(p: Parity) -> &'static str {
    match (p.0, p.1) {
        (0, 0) => "0",
        (1, 0) => "l1",
        (0, 1) => "l2",
        _ => "l1+l2",
    }
}

fn selector_from_token(t: &str) -> Option<Parity> {
    Parity::ALL.into_iter().find(|p| selector_token(*p) == t)
}

/// Canonical text form: fixed field order, pushes sorted by initial dot,
/// terminals always written as coordinates.
pub fn serialize(d: &PresentationDiagram) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "lambda1 = {}", d.lambda1()).unwrap();
    writeln!(out, "lambda2 = {}", d.lambda2()).unwrap();
    writeln!(out, "translate = {}", selector_token(d.selector())).unwrap();
    let mut pushes: Vec<&GreenSegment> = d.pushes().iter().collect();
    pushes.sort_by_key(|p| p.initial);
    for p in pushes {
        writeln!(out, "push {} -> {}", p.initial, p.terminal).unwrap();
    }
    out
}

enum Terminal {
    Coords(IntVec2),
    Dot(DotIndex),
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Cursor { line, text, pos: 0 }
    }

    fn err(&self, expected: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.text[..self.pos].chars().count() + 1,
            expected: expected.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("`{s}`")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '+'))
            .unwrap_or(self.rest().len());
        let w = &self.rest()[..len];
        self.pos += len;
        w
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len() - sign);
        if digits == 0 {
            return Err(self.err("integer"));
        }
        let n: BigInt = rest[..sign + digits]
            .parse()
            .map_err(|_| self.err("integer"))?;
        self.pos += sign + digits;
        Ok(n)
    }

    fn vector(&mut self) -> Result<IntVec2> {
        self.expect("(")?;
        let x = self.integer()?;
        self.expect(",")?;
        let y = self.integer()?;
        self.expect(")")?;
        Ok(IntVec2 { x, y })
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.err("end of line"))
        }
    }
}

/// Parses the text format into a diagram. Structural problems (wrong
/// number of pushes, duplicated corner classes, missing fields) are
/// reported as [`Error::Semantic`]; geometry is left to `validate`.
pub fn parse(text: &str) -> Result<PresentationDiagram> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    match lines.next() {
        Some((n, l)) => {
            let mut c = Cursor::new(n, l);
            c.expect("netmap")?;
            let version_at = {
                c.skip_ws();
                c.pos
            };
            if c.word() != "v1" {
                c.pos = version_at;
                return Err(c.err("`v1`"));
            }
            c.end()?;
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                expected: format!("`{HEADER}`"),
            })
        }
    }

    let mut lambda1 = None;
    let mut lambda2 = None;
    let mut selector = None;
    let mut pushes: Vec<(DotIndex, Terminal)> = Vec::new();

    for (n, l) in lines {
        let mut c = Cursor::new(n, l);
        let key_at = {
            c.skip_ws();
            c.pos
        };
        match c.word() {
            key @ ("lambda1" | "lambda2") => {
                c.expect("=")?;
                let v = c.vector()?;
                c.end()?;
                let slot = if key == "lambda1" {
                    &mut lambda1
                } else {
                    &mut lambda2
                };
                if slot.replace(v).is_some() {
                    return Err(Error::Semantic(format!("line {n}: duplicate {key}")));
                }
            }
            "translate" => {
                c.expect("=")?;
                let at = {
                    c.skip_ws();
                    c.pos
                };
                let sel = selector_from_token(c.word()).ok_or_else(|| {
                    c.pos = at;
                    c.err("one of `0`, `l1`, `l2`, `l1+l2`")
                })?;
                c.end()?;
                if selector.replace(sel).is_some() {
                    return Err(Error::Semantic(format!("line {n}: duplicate translate")));
                }
            }
            "push" => {
                let at = {
                    c.skip_ws();
                    c.pos
                };
                let dot = DotIndex::from_token(c.word()).ok_or_else(|| {
                    c.pos = at;
                    c.err("dot token (`0`, `l1`, `2l1`, `l2`, `l1+l2`, `2l1+l2`)")
                })?;
                c.expect("->")?;
                c.skip_ws();
                let terminal = if c.rest().starts_with('(') {
                    Terminal::Coords(c.vector()?)
                } else {
                    let at = c.pos;
                    let t = DotIndex::from_token(c.word()).ok_or_else(|| {
                        c.pos = at;
                        c.err("coordinates `(x, y)` or a dot token")
                    })?;
                    Terminal::Dot(t)
                };
                c.end()?;
                pushes.push((dot, terminal));
            }
            _ => {
                c.pos = key_at;
                return Err(c.err("`lambda1`, `lambda2`, `translate` or `push`"));
            }
        }
    }

    let lambda1 = lambda1.ok_or_else(|| Error::Semantic("missing lambda1".into()))?;
    let lambda2 = lambda2.ok_or_else(|| Error::Semantic("missing lambda2".into()))?;
    let selector = selector.ok_or_else(|| Error::Semantic("missing translate".into()))?;
    if pushes.len() != 4 {
        return Err(Error::Semantic(format!(
            "expected 4 pushes, found {}",
            pushes.len()
        )));
    }
    for (k, (a, _)) in pushes.iter().enumerate() {
        if pushes[..k].iter().any(|(b, _)| b.class() == a.class()) {
            return Err(Error::Semantic(format!(
                "duplicate push for the corner class of {a}"
            )));
        }
    }

    let basis = IntMat2::from_columns(lambda1.clone(), lambda2.clone());
    let segs: Vec<GreenSegment> = pushes
        .into_iter()
        .map(|(dot, t)| {
            let terminal = match t {
                Terminal::Coords(v) => v,
                Terminal::Dot(d) => d.point(&basis),
            };
            GreenSegment::new(dot, terminal)
        })
        .collect();
    let pushes: [GreenSegment; 4] = segs.try_into().expect("length checked");
    Ok(PresentationDiagram::new(lambda1, lambda2, selector, pushes))
}

#[cfg(test)]
mod tests {
    use super::*;

    const RABBIT: &str = "netmap v1
lambda1 = (0, -1)
lambda2 = (2, 1)
translate = l2
push 0 -> (1, 0)
push l1 -> (1, -1)
push l2 -> (2, 1)
push l1+l2 -> (2, 0)
";

    #[test]
    fn parses_rabbit() {
        let d = parse(RABBIT).unwrap();
        assert_eq!(d.lambda1(), &IntVec2::new(0, -1));
        assert_eq!(d.lambda2(), &IntVec2::new(2, 1));
        assert_eq!(d.selector(), Parity(0, 1));
        assert_eq!(serialize(&d), RABBIT);
    }

    #[test]
    fn comments_shorthand_and_order() {
        let text = "# rabbit\n\nnetmap v1   # header\n  lambda2 = ( 2 ,1 )\nlambda1 = (0,-1)\n\
                    push l1+l2 -> l1+l2\npush l2 -> l2\npush l1 -> (1, -1)\npush 0 -> (1, 0)\n\
                    translate = l2\n";
        assert_eq!(serialize(&parse(text).unwrap()), RABBIT);
    }

    #[test]
    fn empty_input_is_parse_error() {
        assert!(matches!(parse(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("# nothing\n\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn wrong_push_count() {
        let three: String = RABBIT.lines().take(7).map(|l| format!("{l}\n")).collect();
        match parse(&three) {
            Err(Error::Semantic(m)) => assert!(m.contains("expected 4 pushes"), "{m}"),
            other => panic!("{other:?}"),
        }
        let five = format!("{RABBIT}push 2l1 -> (0, -2)\n");
        assert!(matches!(parse(&five), Err(Error::Semantic(_))));
    }

    #[test]
    fn duplicate_class() {
        let text = RABBIT.replace("push l1 -> (1, -1)", "push 2l1 -> (1, -1)");
        match parse(&text) {
            Err(Error::Semantic(m)) => assert!(m.contains("duplicate push"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn error_positions() {
        let text = "netmap v1\nlambda1 = (0, x)\n";
        assert_eq!(
            parse(text),
            Err(Error::Parse {
                line: 2,
                column: 15,
                expected: "integer".into()
            })
        );
        let text = "netmap v2\n";
        assert!(matches!(
            parse(text),
            Err(Error::Parse {
                line: 1,
                column: 8,
                ..
            })
        ));
        let text = RABBIT.replace("translate = l2", "translate = l3");
        assert!(matches!(
            parse(&text),
            Err(Error::Parse {
                line: 4,
                column: 13,
                ..
            })
        ));
        let text = RABBIT.replace("push 0", "pull 0");
        assert!(matches!(
            parse(&text),
            Err(Error::Parse {
                line: 5,
                column: 1,
                ..
            })
        ));
    }

    #[test]
    fn big_coordinates_round_trip() {
        let text = RABBIT.replace(
            "lambda1 = (0, -1)",
            "lambda1 = (123456789012345678901234567890, -1)",
        );
        let d = parse(&text).unwrap();
        assert_eq!(serialize(&d), text);
    }
}
