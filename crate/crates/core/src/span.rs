//! Spans of finite sets, their composition by pullback, and bounded skeleta of
//! the hom-categories `Span(i, j)`.

use crate::error::{CoreError, Result};
use crate::fincat::FinCategory;
use crate::finset::{all_tables, pullback, FinFunction, FinSet, Label};

/// A span `i <-p- z -q-> j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub p: FinFunction,
    pub q: FinFunction,
}

impl Span {
    pub fn new(p: FinFunction, q: FinFunction) -> Result<Self> {
        if p.dom() != q.dom() {
            return Err(CoreError::LegMismatch("span legs must share their apex".into()));
        }
        Ok(Span { p, q })
    }

    pub fn apex(&self) -> &FinSet {
        self.p.dom()
    }

    pub fn left_foot(&self) -> &FinSet {
        self.p.cod()
    }

    pub fn right_foot(&self) -> &FinSet {
        self.q.cod()
    }

    /// `i <- i -> i`.
    pub fn identity(i: &FinSet) -> Self {
        Span { p: FinFunction::identity(i), q: FinFunction::identity(i) }
    }

    /// Relabels the apex as `0..n`, sorted by the pair of leg values, so that
    /// isomorphic spans get equal canonical forms.
    pub fn canonical(&self) -> Span {
        let mut order: Vec<usize> = (0..self.apex().len()).collect();
        order.sort_by_key(|&z| (self.p.apply(z), self.q.apply(z)));
        let z = FinSet::range(order.len());
        let p = FinFunction::new(z.clone(), self.left_foot().clone(), order.iter().map(|&k| self.p.apply(k)).collect());
        let q = FinFunction::new(z, self.right_foot().clone(), order.iter().map(|&k| self.q.apply(k)).collect());
        Span { p: p.expect("relabelled leg"), q: q.expect("relabelled leg") }
    }
}

/// Pullback of the facing legs; the apex is labelled by pairs.
pub fn span_compose(m: &Span, n: &Span) -> Result<Span> {
    if m.right_foot() != n.left_foot() {
        return Err(CoreError::LegMismatch("middle feet differ".into()));
    }
    let (apex, pi1, pi2) = pullback(&m.q, &n.p)?;
    let p = pi1.then(&m.p)?;
    let q = pi2.then(&n.q)?;
    debug_assert_eq!(p.dom(), &apex);
    Span::new(p, q)
}

/// An apex bijection commuting with both legs, if one exists.
pub fn span_iso(a: &Span, b: &Span) -> Option<FinFunction> {
    if a.left_foot() != b.left_foot() || a.right_foot() != b.right_foot() || a.apex().len() != b.apex().len() {
        return None;
    }
    // Match elements with equal leg values in order; any bijection that
    // respects leg values works, so sorting both sides suffices.
    let key = |s: &Span, z: usize| (s.p.apply(z), s.q.apply(z));
    let mut za: Vec<usize> = (0..a.apex().len()).collect();
    let mut zb = za.clone();
    za.sort_by_key(|&z| key(a, z));
    zb.sort_by_key(|&z| key(b, z));
    let mut table = vec![0; za.len()];
    for (&x, &y) in za.iter().zip(&zb) {
        if key(a, x) != key(b, y) {
            return None;
        }
        table[x] = y;
    }
    FinFunction::new(a.apex().clone(), b.apex().clone(), table).ok()
}

/// A span with an apex twist valued in a twist category. Only the degenerate
/// twist category (one object, one morphism) is supported, where the twist is
/// the unique map to its single object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedSpan {
    pub span: Span,
    pub twist: FinFunction,
}

impl TwistedSpan {
    pub fn degenerate(span: Span) -> Self {
        let one = FinSet::range(1);
        let twist = FinFunction::from_fn(span.apex().clone(), one, |_| 0).expect("map to a point");
        TwistedSpan { span, twist }
    }
}

pub fn mat_compose(m: &TwistedSpan, n: &TwistedSpan) -> Result<TwistedSpan> {
    if m.twist.cod().len() != 1 || n.twist.cod().len() != 1 {
        return Err(CoreError::Shape("only degenerate twists compose".into()));
    }
    Ok(TwistedSpan::degenerate(span_compose(&m.span, &n.span)?))
}

/// Spans `i <- z -> j` with `|z| <= bound`, one per isomorphism class,
/// and all leg-commuting apex maps between them.
///
/// Objects are labelled `(p, q)` by their leg tables; morphisms by
/// `(source, target, apex map)`.
pub fn span_hom_category(i: &FinSet, j: &FinSet, bound: usize, max_morphisms: usize) -> Result<(FinCategory, Vec<Span>)> {
    let width = i.len() * j.len();
    let mut spans = Vec::new();
    for size in 0..=bound {
        for seq in multisets(width, size) {
            let z = FinSet::range(size);
            let p = FinFunction::new(z.clone(), i.clone(), seq.iter().map(|&e| e / j.len()).collect())?;
            let q = FinFunction::new(z, j.clone(), seq.iter().map(|&e| e % j.len()).collect())?;
            spans.push(Span { p, q });
        }
    }
    let label = |s: &Span| Label::pair(Label::table(s.p.table()), Label::table(s.q.table()));
    spans.sort_by_key(label);
    let mut mors: Vec<(Label, usize, usize)> = Vec::new();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut ident = vec![0; spans.len()];
    for (a, sa) in spans.iter().enumerate() {
        for (b, sb) in spans.iter().enumerate() {
            for h in all_tables(sa.apex().len(), sb.apex().len()) {
                let commutes = (0..h.len()).all(|z| sa.p.apply(z) == sb.p.apply(h[z]) && sa.q.apply(z) == sb.q.apply(h[z]));
                if commutes {
                    if a == b && h.iter().enumerate().all(|(x, &y)| x == y) {
                        ident[a] = mors.len();
                    }
                    mors.push((Label::tup(vec![label(sa), label(sb), Label::table(&h)]), a, b));
                    maps.push(h);
                    if mors.len() > max_morphisms {
                        return Err(CoreError::TooLarge { what: "span hom-category".into(), size: mors.len(), limit: max_morphisms });
                    }
                }
            }
        }
    }
    let lookup: std::collections::HashMap<(usize, usize, Vec<usize>), usize> =
        mors.iter().zip(&maps).enumerate().map(|(k, ((_, a, b), h))| ((*a, *b, h.clone()), k)).collect();
    let cat = FinCategory::from_unsorted(
        spans.iter().map(label).collect(),
        mors.clone(),
        ident,
        |f, g| {
            let h: Vec<usize> = maps[f].iter().map(|&x| maps[g][x]).collect();
            lookup.get(&(mors[f].1, mors[g].2, h)).copied()
        },
    )?;
    Ok((cat, spans))
}

/// Nondecreasing sequences of the given length over `0..width`.
fn multisets(width: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(width, len - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for v in lo..width {
            let mut s = rest.clone();
            s.push(v);
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_category;

    fn to_point(n: usize) -> Span {
        let z = FinSet::range(n);
        let one = FinSet::range(1);
        Span::new(
            FinFunction::from_fn(z.clone(), one.clone(), |_| 0).unwrap(),
            FinFunction::from_fn(z, one, |_| 0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn compose_with_identity_is_isomorphic() {
        let s = to_point(3);
        let c = span_compose(&s, &Span::identity(&FinSet::range(1))).unwrap();
        assert!(span_iso(&c, &s).unwrap().is_bijective());
    }

    #[test]
    fn pullback_apex_size() {
        let c = span_compose(&to_point(2), &to_point(3)).unwrap();
        assert_eq!(c.apex().len(), 6);
        let d = mat_compose(&TwistedSpan::degenerate(to_point(2)), &TwistedSpan::degenerate(to_point(3))).unwrap();
        assert_eq!(d.span, c);
    }

    #[test]
    fn small_span_categories() {
        let one = FinSet::range(1);
        let (c, _) = span_hom_category(&one, &one, 1, 64).unwrap();
        assert_eq!((c.n_objects(), c.n_morphisms()), (2, 3));
        let (c, _) = span_hom_category(&one, &one, 2, 64).unwrap();
        assert_eq!(c.n_objects(), 3);
        // from the empty apex (3), 1->1, 1->2 (2), 2->1, 2->2 (4)
        assert_eq!(c.n_morphisms(), 11);
        assert!(check_category(&c).ok());
        let two = FinSet::range(2);
        let (c, _) = span_hom_category(&two, &one, 2, 256).unwrap();
        assert!(check_category(&c).ok());
    }
}
