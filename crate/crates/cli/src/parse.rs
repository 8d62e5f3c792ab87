//! Vertex, state and time arguments.

use anyhow::{anyhow, bail, Context, Result};
use qwalk::{Graph, QuantumState};

/// Resolves a vertex by label, or by internal id written `#id`.
pub fn vertex(g: &Graph, token: &str) -> Result<usize> {
    let token = token.trim();
    if let Some(v) = g.vertex_by_label(token) {
        return Ok(v);
    }
    if let Some(id) = token.strip_prefix('#') {
        let v: usize = id.parse().with_context(|| format!("bad vertex id {token:?}"))?;
        if v < g.n() {
            return Ok(v);
        }
        bail!("vertex id {v} out of range (graph has {} vertices)", g.n());
    }
    bail!("no vertex labelled {token:?}")
}

/// `a` is a vertex state, `a,b` a pair state and `a=1,b=-2,...` a
/// normalized combination.
pub fn state(g: &Graph, text: &str) -> Result<QuantumState> {
    let n = g.n();
    if text.contains('=') {
        let mut vertices = Vec::new();
        let mut coeffs = Vec::new();
        for term in text.split(',') {
            let (v, c) = term.split_once('=').ok_or_else(|| anyhow!("expected vertex=coefficient, found {term:?}"))?;
            vertices.push(vertex(g, v)?);
            coeffs.push(expr(c).with_context(|| format!("bad coefficient {c:?}"))?);
        }
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            bail!("state {text:?} is zero");
        }
        let coeffs: Vec<f64> = coeffs.iter().map(|c| c / norm).collect();
        return Ok(QuantumState::mstate(n, &vertices, &coeffs)?);
    }
    let parts: Vec<&str> = text.split(',').collect();
    match parts.as_slice() {
        [a] => Ok(QuantumState::vertex(n, vertex(g, a)?)?),
        [a, b] => Ok(QuantumState::pair(n, vertex(g, a)?, vertex(g, b)?)?),
        _ => bail!("state {text:?}: expected `a`, `a,b` or `a=x,b=y,...`"),
    }
}

/// `a,b,c,d` as two pair states.
pub fn pairs(g: &Graph, text: &str) -> Result<(QuantumState, QuantumState)> {
    let parts: Vec<&str> = text.split(',').collect();
    let [a, b, c, d] = parts.as_slice() else { bail!("--pairs expects a,b,c,d") };
    let n = g.n();
    Ok((QuantumState::pair(n, vertex(g, a)?, vertex(g, b)?)?, QuantumState::pair(n, vertex(g, c)?, vertex(g, d)?)?))
}

/// Source and target from either `--pairs` or `--source`/`--target`.
pub fn source_target(g: &Graph, pairs_arg: Option<&str>, source: Option<&str>, target: Option<&str>) -> Result<(Option<QuantumState>, Option<QuantumState>)> {
    if let Some(p) = pairs_arg {
        let (s, t) = pairs(g, p)?;
        return Ok((Some(s), Some(t)));
    }
    Ok((source.map(|s| state(g, s)).transpose()?, target.map(|t| state(g, t)).transpose()?))
}

/// Arithmetic over numbers, `pi` and `sqrt(...)` with `* / + -` and
/// parentheses, e.g. `2*pi/sqrt(5)`.
pub fn expr(text: &str) -> Result<f64> {
    let mut p = Expr { s: text.as_bytes(), i: 0 };
    let v = p.sum()?;
    p.skip();
    if p.i != p.s.len() {
        bail!("unexpected {:?} in {text:?}", &text[p.i..]);
    }
    Ok(v)
}

struct Expr<'a> {
    s: &'a [u8],
    i: usize,
}

impl Expr<'_> {
    fn skip(&mut self) {
        while self.s.get(self.i).is_some_and(u8::is_ascii_whitespace) {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<f64> {
        let mut v = self.product()?;
        loop {
            if self.eat(b'+') {
                v += self.product()?;
            } else if self.eat(b'-') {
                v -= self.product()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn product(&mut self) -> Result<f64> {
        let mut v = self.unary()?;
        loop {
            if self.eat(b'*') {
                v *= self.unary()?;
            } else if self.eat(b'/') {
                v /= self.unary()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<f64> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<f64> {
        self.skip();
        if self.eat(b'(') {
            let v = self.sum()?;
            if !self.eat(b')') {
                bail!("missing ')'");
            }
            return Ok(v);
        }
        let rest = &self.s[self.i..];
        if rest.starts_with(b"pi") {
            self.i += 2;
            return Ok(std::f64::consts::PI);
        }
        if rest.starts_with(b"sqrt") {
            self.i += 4;
            if !self.eat(b'(') {
                bail!("sqrt needs '('");
            }
            let v = self.sum()?;
            if !self.eat(b')') {
                bail!("missing ')'");
            }
            return Ok(v.sqrt());
        }
        let start = self.i;
        while self.s.get(self.i).is_some_and(|c| c.is_ascii_digit() || *c == b'.' || *c == b'e' || *c == b'E') {
            // allow exponents like 1e-3
            if matches!(self.s[self.i], b'e' | b'E') && matches!(self.s.get(self.i + 1), Some(b'-' | b'+')) {
                self.i += 1;
            }
            self.i += 1;
        }
        let lit = std::str::from_utf8(&self.s[start..self.i]).unwrap_or_default();
        lit.parse().map_err(|_| anyhow!("expected a number, found {:?}", String::from_utf8_lossy(rest)))
    }
}

/// `x,y;z,w` as integer tuples.
pub fn tuples(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.split(',').map(|x| x.trim().parse::<i64>().with_context(|| format!("bad integer {x:?}"))).collect())
        .collect()
}
