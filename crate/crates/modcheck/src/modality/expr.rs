//! Object and arrow expressions with a prefix textual form.
//!
//! Objects: `A`, `K`, `0`, `!X`, `X*Y`, `X+Y`, `Name(X)`, parentheses.
//! Arrows: `delta[A]`, `id[X]`, `sym[X,Y]`, `zero[X,Y]`, `inj0[X,Y]`,
//! `proj1[X,Y]`, probes `f[X,Y]`, and the combinators `compose(..)`,
//! `tensor(..)`, `sum(..)`, `lift(..)`.

use std::fmt;

use super::ModalityError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ObjExpr {
    Var(String),
    Unit,
    Zero,
    Bang(Box<ObjExpr>),
    Tensor(Vec<ObjExpr>),
    Sum(Vec<ObjExpr>),
    Functor(String, Box<ObjExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArrowExpr {
    Struct { name: String, objs: Vec<ObjExpr> },
    Id(ObjExpr),
    Sym(ObjExpr, ObjExpr),
    Lift(Box<ArrowExpr>),
    Probe { name: String, dom: ObjExpr, cod: ObjExpr },
    Compose(Vec<ArrowExpr>),
    Tensor(Vec<ArrowExpr>),
    Sum(Vec<ArrowExpr>),
    Zero(ObjExpr, ObjExpr),
    Inj { index: usize, left: ObjExpr, right: ObjExpr },
    Proj { index: usize, left: ObjExpr, right: ObjExpr },
}

/// Names reserved for probe variables in laws.
pub const PROBE_NAMES: [&str; 3] = ["f", "g", "h"];

impl ArrowExpr {
    pub fn parse(text: &str) -> Result<ArrowExpr, ModalityError> {
        let mut p = Parser::new(text);
        let e = p.arrow()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Structural symbols used anywhere in the expression.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let ArrowExpr::Struct { name, .. } = e {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
        });
        out
    }

    /// Probe variables with their declared types, first occurrence wins.
    pub fn probes(&self) -> Vec<(String, ObjExpr, ObjExpr)> {
        let mut out: Vec<(String, ObjExpr, ObjExpr)> = Vec::new();
        self.visit(&mut |e| {
            if let ArrowExpr::Probe { name, dom, cod } = e {
                if !out.iter().any(|(n, _, _)| n == name) {
                    out.push((name.clone(), dom.clone(), cod.clone()));
                }
            }
        });
        out
    }

    /// Object constructors used anywhere in the expression.
    pub fn functors(&self) -> Vec<String> {
        let mut out = Vec::new();
        let push_obj = |o: &ObjExpr, out: &mut Vec<String>| o.functors_into(out);
        self.visit(&mut |e| match e {
            ArrowExpr::Struct { objs, .. } => objs.iter().for_each(|o| push_obj(o, &mut out)),
            ArrowExpr::Id(o) => push_obj(o, &mut out),
            ArrowExpr::Sym(a, b) | ArrowExpr::Zero(a, b) => {
                push_obj(a, &mut out);
                push_obj(b, &mut out);
            }
            ArrowExpr::Probe { dom, cod, .. } => {
                push_obj(dom, &mut out);
                push_obj(cod, &mut out);
            }
            ArrowExpr::Inj { left, right, .. } | ArrowExpr::Proj { left, right, .. } => {
                push_obj(left, &mut out);
                push_obj(right, &mut out);
            }
            _ => {}
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&ArrowExpr)) {
        f(self);
        match self {
            ArrowExpr::Lift(a) => a.visit(f),
            ArrowExpr::Compose(xs) | ArrowExpr::Tensor(xs) | ArrowExpr::Sum(xs) => {
                for x in xs {
                    x.visit(f);
                }
            }
            _ => {}
        }
    }
}

impl ObjExpr {
    pub fn parse(text: &str) -> Result<ObjExpr, ModalityError> {
        let mut p = Parser::new(text);
        let o = p.obj()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(o)
    }

    pub fn var(name: &str) -> ObjExpr {
        ObjExpr::Var(name.to_string())
    }

    pub fn bang(x: ObjExpr) -> ObjExpr {
        ObjExpr::Bang(Box::new(x))
    }

    /// Number of nested `!` applications on the deepest path.
    pub fn bang_depth(&self) -> usize {
        match self {
            ObjExpr::Var(_) | ObjExpr::Unit | ObjExpr::Zero => 0,
            ObjExpr::Bang(x) => 1 + x.bang_depth(),
            ObjExpr::Tensor(xs) | ObjExpr::Sum(xs) => xs.iter().map(|x| x.bang_depth()).max().unwrap_or(0),
            ObjExpr::Functor(_, x) => 1 + x.bang_depth(),
        }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.vars_into(&mut out);
        out
    }

    fn vars_into(&self, out: &mut Vec<String>) {
        match self {
            ObjExpr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone())
                }
            }
            ObjExpr::Unit | ObjExpr::Zero => {}
            ObjExpr::Bang(x) | ObjExpr::Functor(_, x) => x.vars_into(out),
            ObjExpr::Tensor(xs) | ObjExpr::Sum(xs) => xs.iter().for_each(|x| x.vars_into(out)),
        }
    }

    fn functors_into(&self, out: &mut Vec<String>) {
        match self {
            ObjExpr::Functor(n, x) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
                x.functors_into(out);
            }
            ObjExpr::Bang(x) => x.functors_into(out),
            ObjExpr::Tensor(xs) | ObjExpr::Sum(xs) => xs.iter().for_each(|x| x.functors_into(out)),
            _ => {}
        }
    }
}

// ---------------------------------------------------------------- display

fn prec(o: &ObjExpr) -> u8 {
    match o {
        ObjExpr::Sum(_) => 0,
        ObjExpr::Tensor(_) => 1,
        _ => 2,
    }
}

fn write_obj(f: &mut fmt::Formatter<'_>, o: &ObjExpr, min_prec: u8) -> fmt::Result {
    let needs = prec(o) < min_prec;
    if needs {
        write!(f, "(")?;
    }
    match o {
        ObjExpr::Var(v) => write!(f, "{v}")?,
        ObjExpr::Unit => write!(f, "K")?,
        ObjExpr::Zero => write!(f, "0")?,
        ObjExpr::Bang(x) => {
            write!(f, "!")?;
            write_obj(f, x, 2)?;
        }
        ObjExpr::Functor(n, x) => {
            write!(f, "{n}(")?;
            write_obj(f, x, 0)?;
            write!(f, ")")?;
        }
        ObjExpr::Tensor(xs) => {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                write_obj(f, x, 2)?;
            }
        }
        ObjExpr::Sum(xs) => {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, "+")?;
                }
                write_obj(f, x, 1)?;
            }
        }
    }
    if needs {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_obj(f, self, 0)
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for ArrowExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowExpr::Struct { name, objs } => {
                write!(f, "{name}[")?;
                write_list(f, objs)?;
                write!(f, "]")
            }
            ArrowExpr::Id(o) => write!(f, "id[{o}]"),
            ArrowExpr::Sym(a, b) => write!(f, "sym[{a}, {b}]"),
            ArrowExpr::Lift(a) => write!(f, "lift({a})"),
            ArrowExpr::Probe { name, dom, cod } => write!(f, "{name}[{dom}, {cod}]"),
            ArrowExpr::Compose(xs) => {
                write!(f, "compose(")?;
                write_list(f, xs)?;
                write!(f, ")")
            }
            ArrowExpr::Tensor(xs) => {
                write!(f, "tensor(")?;
                write_list(f, xs)?;
                write!(f, ")")
            }
            ArrowExpr::Sum(xs) => {
                write!(f, "sum(")?;
                write_list(f, xs)?;
                write!(f, ")")
            }
            ArrowExpr::Zero(a, b) => write!(f, "zero[{a}, {b}]"),
            ArrowExpr::Inj { index, left, right } => write!(f, "inj{index}[{left}, {right}]"),
            ArrowExpr::Proj { index, left, right } => write!(f, "proj{index}[{left}, {right}]"),
        }
    }
}

// ----------------------------------------------------------------- parser

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

const MAX_DEPTH: usize = 200;

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\''
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0, depth: 0 }
    }

    fn err(&self, msg: &str) -> ModalityError {
        ModalityError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ModalityError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<String, ModalityError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if ident_char(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected identifier"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn enter(&mut self) -> Result<(), ModalityError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("nesting too deep"));
        }
        Ok(())
    }

    fn obj(&mut self) -> Result<ObjExpr, ModalityError> {
        self.enter()?;
        let mut parts = vec![self.obj_tensor()?];
        while self.eat('+') {
            parts.push(self.obj_tensor()?);
        }
        self.depth -= 1;
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { ObjExpr::Sum(parts) })
    }

    fn obj_tensor(&mut self) -> Result<ObjExpr, ModalityError> {
        let mut parts = vec![self.obj_unary()?];
        while self.eat('*') {
            parts.push(self.obj_unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { ObjExpr::Tensor(parts) })
    }

    fn obj_unary(&mut self) -> Result<ObjExpr, ModalityError> {
        self.enter()?;
        let r = if self.eat('!') {
            Ok(ObjExpr::Bang(Box::new(self.obj_unary()?)))
        } else if self.eat('(') {
            let o = self.obj()?;
            self.expect(')')?;
            Ok(o)
        } else {
            let id = self.ident()?;
            match id.as_str() {
                "K" => Ok(ObjExpr::Unit),
                "0" => Ok(ObjExpr::Zero),
                _ if self.eat('(') => {
                    let o = self.obj()?;
                    self.expect(')')?;
                    Ok(ObjExpr::Functor(id, Box::new(o)))
                }
                _ if id.chars().next().is_some_and(|c| c.is_ascii_uppercase()) => Ok(ObjExpr::Var(id)),
                _ => Err(self.err(&format!("unknown object {id:?}"))),
            }
        };
        self.depth -= 1;
        r
    }

    fn obj_args(&mut self) -> Result<Vec<ObjExpr>, ModalityError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.obj()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn arrow_args(&mut self) -> Result<Vec<ArrowExpr>, ModalityError> {
        self.expect('(')?;
        let mut out = Vec::new();
        loop {
            out.push(self.arrow()?);
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn two(&mut self, what: &str) -> Result<(ObjExpr, ObjExpr), ModalityError> {
        let mut a = self.obj_args()?;
        if a.len() != 2 {
            return Err(self.err(&format!("{what} takes two objects")));
        }
        let b = a.pop().unwrap();
        Ok((a.pop().unwrap(), b))
    }

    fn arrow(&mut self) -> Result<ArrowExpr, ModalityError> {
        self.enter()?;
        let name = self.ident()?;
        let r = match name.as_str() {
            "compose" => Ok(ArrowExpr::Compose(self.arrow_args()?)),
            "tensor" => Ok(ArrowExpr::Tensor(self.arrow_args()?)),
            "sum" => Ok(ArrowExpr::Sum(self.arrow_args()?)),
            "lift" => {
                let mut a = self.arrow_args()?;
                if a.len() != 1 {
                    return Err(self.err("lift takes one arrow"));
                }
                Ok(ArrowExpr::Lift(Box::new(a.pop().unwrap())))
            }
            "id" => {
                let mut a = self.obj_args()?;
                if a.len() != 1 {
                    return Err(self.err("id takes one object"));
                }
                Ok(ArrowExpr::Id(a.pop().unwrap()))
            }
            "sym" => self.two("sym").map(|(a, b)| ArrowExpr::Sym(a, b)),
            "zero" => self.two("zero").map(|(a, b)| ArrowExpr::Zero(a, b)),
            "inj0" | "inj1" | "proj0" | "proj1" => {
                let index = (name.ends_with('1')) as usize;
                let (left, right) = self.two(&name)?;
                if name.starts_with("inj") {
                    Ok(ArrowExpr::Inj { index, left, right })
                } else {
                    Ok(ArrowExpr::Proj { index, left, right })
                }
            }
            n if PROBE_NAMES.contains(&n) => {
                let (dom, cod) = self.two("probe")?;
                Ok(ArrowExpr::Probe { name, dom, cod })
            }
            _ => {
                let objs = if self.peek() == Some('[') { self.obj_args()? } else { Vec::new() };
                Ok(ArrowExpr::Struct { name, objs })
            }
        };
        self.depth -= 1;
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_roundtrip() {
        for s in [
            "compose(delta[A], eps[!A])",
            "compose(Delta[A], tensor(e[A], id[!A]))",
            "sum(compose(d[A], id[!A*A]), zero[!A*A, !A])",
            "compose(tensor(lift(inj0[A, B]), lift(inj1[A, B])), nabla[A+B])",
            "compose(f[A, B], g[B, A])",
            "mK[]",
            "rb.omega[Sh(!A)*!A]",
            "id[(A+B)*C]",
            "id[!(A*B)]",
        ] {
            let e = ArrowExpr::parse(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(ArrowExpr::parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn object_precedence() {
        let o = ObjExpr::parse("!A*B+C").unwrap();
        assert_eq!(
            o,
            ObjExpr::Sum(vec![
                ObjExpr::Tensor(vec![ObjExpr::bang(ObjExpr::var("A")), ObjExpr::var("B")]),
                ObjExpr::var("C")
            ])
        );
    }

    #[test]
    fn parse_errors() {
        for s in ["", "compose(", "id[A", "lift(a[A], b[A])", "sym[A]", "id[a]", "compose(id[A]) x"] {
            assert!(ArrowExpr::parse(s).is_err(), "{s}");
        }
        let deep = "lift(".repeat(1000) + "id[A]" + &")".repeat(1000);
        assert!(ArrowExpr::parse(&deep).is_err());
    }

    #[test]
    fn collects_symbols_and_probes() {
        let e = ArrowExpr::parse("compose(f[A, B], delta[B], lift(g[B, A]), delta[B])").unwrap();
        assert_eq!(e.symbols(), vec!["delta"]);
        let p: Vec<_> = e.probes().into_iter().map(|(n, _, _)| n).collect();
        assert_eq!(p, vec!["f", "g"]);
    }
}
