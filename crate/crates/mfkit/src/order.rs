use crate::poly::Monomial;
use std::cmp::Ordering;

/// Comparison scheme for monomials. All kinds are total, multiplicative
/// orders with 1 as the least monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    DegRevLex,
    Lex,
    /// Block elimination order: the first `split` permuted variables form the
    /// elimination block, compared degrevlex; ties fall through to the rest.
    Block(usize),
}

/// A monomial order together with the variable permutation it reads
/// exponents through. `perm[k]` is the variable compared at position `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            perm: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            perm: (0..nvars).collect(),
        }
    }

    /// Elimination order that sorts `first` (variable indices) above the rest.
    pub fn block(first: &[usize], nvars: usize) -> Self {
        let mut perm: Vec<usize> = first.to_vec();
        for v in 0..nvars {
            if !first.contains(&v) {
                perm.push(v);
            }
        }
        MonomialOrder {
            kind: OrderKind::Block(first.len()),
            perm,
        }
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::DegRevLex => degrevlex_cmp(&self.perm, a, b),
            OrderKind::Lex => {
                for &v in &self.perm {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Block(split) => {
                let (hi, lo) = self.perm.split_at(split);
                degrevlex_cmp(hi, a, b).then_with(|| degrevlex_cmp(lo, a, b))
            }
        }
    }

    /// Extend the permutation when variables were appended to the ring.
    pub fn extended(&self, nvars: usize) -> Self {
        let mut perm = self.perm.clone();
        for v in perm.len()..nvars {
            perm.push(v);
        }
        MonomialOrder {
            kind: self.kind,
            perm,
        }
    }
}

fn degrevlex_cmp(vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    let da: u64 = vars.iter().map(|&v| a.0[v] as u64).sum();
    let db: u64 = vars.iter().map(|&v| b.0[v] as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // Reverse lexicographic tie-break: the last variable with differing
    // exponent decides, and the smaller exponent wins.
    for &v in vars.iter().rev() {
        match a.0[v].cmp(&b.0[v]) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}
