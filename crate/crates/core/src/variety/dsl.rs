//! Bundle specification language.
//!
//! ```text
//! bundle := term ("+" term)* twist?
//! term   := "O" "(" int ("," int)* ")" | "T"
//! twist  := "<" rat "*" ident ("+" rat "*" ident)* ">"
//! rat    := int | int "/" int
//! ```
//!
//! Integers may carry a sign (`-` or the unicode minus). Whitespace is ignored.
//! Positions in errors are 0-based character offsets.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BundleKind, BundleModel, CohomClass, VarietyError, VarietyModel};
use crate::expr::parse_expr;
use crate::ring::Rational;

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn new(s: &str) -> Self {
        Lexer {
            chars: s.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> VarietyError {
        VarietyError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), VarietyError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected `{c}`, found `{x}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    fn int(&mut self) -> Result<BigInt, VarietyError> {
        self.skip_ws();
        let start = self.pos;
        let mut negative = false;
        if let Some('-') | Some('\u{2212}') = self.chars.get(self.pos) {
            negative = true;
            self.pos += 1;
        } else if let Some('+') = self.chars.get(self.pos) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[digits_start..self.pos].iter().collect();
        let n: BigInt = digits.parse().expect("ascii digits");
        Ok(if negative { -n } else { n })
    }

    fn small_int(&mut self) -> Result<i64, VarietyError> {
        let start = self.pos;
        let n = self.int()?;
        i64::try_from(n).map_err(|_| VarietyError::Parse {
            position: start,
            message: "integer out of range".into(),
        })
    }

    fn rat(&mut self) -> Result<Rational, VarietyError> {
        let num = self.int()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.int()?;
            if den.is_zero() {
                return Err(VarietyError::Parse {
                    position: at,
                    message: "zero denominator".into(),
                });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn ident(&mut self) -> Result<(String, usize), VarietyError> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_alphabetic() || *c == '_' => {}
            _ => return Err(self.error("expected a generator name")),
        }
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        Ok((self.chars[start..self.pos].iter().collect(), start))
    }
}

/// Parses a bundle specification on `variety`.
pub fn parse_bundle<'a>(spec: &str, variety: &'a VarietyModel) -> Result<BundleModel<'a>, VarietyError> {
    let mut lx = Lexer::new(spec);
    let mut summands = Vec::new();
    loop {
        let term_start = {
            lx.skip_ws();
            lx.pos
        };
        match lx.peek() {
            Some('O') => {
                lx.pos += 1;
                lx.expect('(')?;
                let mut degrees = vec![lx.small_int()?];
                while lx.peek() == Some(',') {
                    lx.pos += 1;
                    degrees.push(lx.small_int()?);
                }
                lx.expect(')')?;
                if degrees.len() != variety.generators().len() {
                    return Err(VarietyError::Parse {
                        position: term_start,
                        message: format!(
                            "O(...) needs {} degree(s) on {}, got {}",
                            variety.generators().len(),
                            variety.name(),
                            degrees.len()
                        ),
                    });
                }
                summands.push(BundleKind::Line(degrees));
            }
            Some('T') => {
                lx.pos += 1;
                if !matches!(variety.kind(), super::VarietyKind::Projective(_)) {
                    return Err(VarietyError::TangentOffProjectiveSpace(variety.name().to_string()));
                }
                summands.push(BundleKind::Tangent);
            }
            Some(c) => return Err(lx.error(format!("expected `O(` or `T`, found `{c}`"))),
            None => return Err(lx.error("expected `O(` or `T`, found end of input")),
        }
        if lx.peek() == Some('+') {
            lx.pos += 1;
            continue;
        }
        break;
    }
    let mut twist = CohomClass::zero(variety, 1);
    if lx.peek() == Some('<') {
        lx.pos += 1;
        loop {
            let q = lx.rat()?;
            lx.expect('*')?;
            let (name, at) = lx.ident()?;
            let g = variety
                .generator_index(&name)
                .ok_or(VarietyError::UnknownGenerator { name, position: at })?;
            twist = twist.add(&variety.generator(g).scale(&q));
            if lx.peek() == Some('+') {
                lx.pos += 1;
                continue;
            }
            break;
        }
        lx.expect('>')?;
    }
    if let Some(c) = lx.peek() {
        return Err(lx.error(format!("unexpected `{c}`")));
    }
    let e = BundleModel::from_summands(variety, spec.trim(), summands)?;
    e.with_twist(twist)
}

/// Parses a class expression over the generator names of `variety`, e.g. `2*H^2` or `f1+f2`.
pub fn parse_class_expr<'a>(src: &str, variety: &'a VarietyModel) -> Result<CohomClass<'a>, VarietyError> {
    let to_err = |e: crate::expr::ExprError| VarietyError::Parse {
        position: e.position,
        message: e.message,
    };
    let e = parse_expr(src).map_err(to_err)?;
    let resolve = |name: &str, position: usize| {
        variety
            .generator_index(name)
            .map(|i| variety.generator(i))
            .ok_or_else(|| crate::expr::ExprError {
                position,
                message: format!("unknown generator `{name}`"),
            })
    };
    e.evaluate(&variety.unit(), &resolve).map_err(to_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{frac, rat};
    use crate::variety::{parse_variety_name, projective_space};

    #[test]
    fn split_bundle_on_p3() {
        let p3 = projective_space(3);
        let e = parse_bundle("O(1)+O(1)+O(2)", &p3).unwrap();
        assert_eq!(e.rank(), 3);
        let h = p3.generator(0);
        // (1+H)^2 (1+2H) = 1 + 4H + 5H^2 + 2H^3
        assert_eq!(e.chern_class(1), h.scale(&rat(4)));
        assert_eq!(e.chern_class(2), h.pow(2).scale(&rat(5)));
        assert_eq!(e.chern_class(3), h.pow(3).scale(&rat(2)));
        assert_eq!(e.is_ample(), Some(true));
    }

    #[test]
    fn tangent_bundle_of_p2() {
        let p2 = projective_space(2);
        let t = parse_bundle("T", &p2).unwrap();
        let h = p2.generator(0);
        assert_eq!(t.rank(), 2);
        assert_eq!(t.chern_class(1), h.scale(&rat(3)));
        assert_eq!(t.chern_class(2), h.pow(2).scale(&rat(3)));
        assert_eq!(t.is_ample(), Some(true));
        let q = parse_variety_name("P1xP1").unwrap();
        assert!(matches!(parse_bundle("T", &q), Err(VarietyError::TangentOffProjectiveSpace(_))));
    }

    #[test]
    fn twisted_spec_on_quadric() {
        let q = parse_variety_name("P1xP1").unwrap();
        let e = parse_bundle("O(1,1)+O(1,1)<\u{2212}1/2*f1>", &q).unwrap();
        assert_eq!(e.rank(), 2);
        assert_eq!(e.twist(), &q.generator(0).scale(&frac(-1, 2)));
        assert_eq!(e.is_ample(), Some(true));
        let e2 = parse_bundle("O(1,1) + O(1,1) < -1 * f1 >", &q).unwrap();
        assert_eq!(e2.is_ample(), Some(false));
        assert_eq!(e2.is_nef(), Some(true));
    }

    #[test]
    fn parse_errors_name_positions() {
        let p3 = projective_space(3);
        match parse_bundle("O(1)+Q(2)", &p3) {
            Err(VarietyError::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        match parse_bundle("O(1,2)", &p3) {
            Err(VarietyError::Parse { position, .. }) => assert_eq!(position, 0),
            other => panic!("{other:?}"),
        }
        match parse_bundle("O(1)<1*g>", &p3) {
            Err(VarietyError::UnknownGenerator { name, position }) => {
                assert_eq!((name.as_str(), position), ("g", 7))
            }
            other => panic!("{other:?}"),
        }
        match parse_bundle("O(1", &p3) {
            Err(VarietyError::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        match parse_bundle("O(1)<1/0*H>", &p3) {
            Err(VarietyError::Parse { position, .. }) => assert_eq!(position, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_bundle("O(1) O(2)", &p3).is_err());
        assert!(parse_bundle("", &p3).is_err());
    }

    #[test]
    fn chern_classes_with_twist() {
        let p3 = projective_space(3);
        let h = p3.generator(0);
        let e = parse_bundle("O(1)+O(2)", &p3).unwrap();
        assert_eq!(e.chern_class(1), h.scale(&rat(3)));
        for t in [rat(1), frac(-1, 3), rat(5)] {
            let et = e.with_twist(h.scale(&t)).unwrap();
            assert_eq!(et.chern_class(1), h.scale(&(rat(3) + rat(2) * &t)));
        }
        let e3 = parse_bundle("O(1)+O(1)+O(1)", &p3).unwrap();
        assert_eq!(e3.chern_class(2), h.pow(2).scale(&rat(3)));
        assert!(e3.chern_class(4).is_zero());
        assert!(e3.chern_class(-1).is_zero());
    }

    #[test]
    fn schur_classes() {
        let p3 = projective_space(3);
        let h = p3.generator(0);
        let lam = |v: &[u32]| crate::ring::Partition::new(v.to_vec()).unwrap();
        let e = parse_bundle("O(1)+O(1)+O(1)", &p3).unwrap();
        assert_eq!(e.schur_class(&lam(&[1, 1])).unwrap(), h.pow(2).scale(&rat(6)));
        let f = parse_bundle("O(1)+O(2)", &p3).unwrap();
        assert_eq!(f.schur_class(&lam(&[2])).unwrap(), h.pow(2).scale(&rat(2)));
        for spec in ["O(1)", "O(1)+O(2)", "O(1)+O(1)+O(3)"] {
            let b = parse_bundle(spec, &p3).unwrap();
            let r = b.rank() as i64;
            assert_eq!(b.derived_schur_class(&lam(&[1]), 1).unwrap(), p3.unit().scale(&rat(r)));
        }
    }

    #[test]
    fn class_expressions() {
        let x = parse_variety_name("P1xP1xP1").unwrap();
        let c = parse_class_expr("(f1+f2+f3)^2", &x).unwrap();
        assert_eq!(x.evaluate(&[c, x.generator(2)]).unwrap(), rat(2));
        assert!(matches!(parse_class_expr("f4", &x), Err(VarietyError::Parse { position: 0, .. })));
    }
}
