use crate::error::{AlgebraError, Result};
use crate::word::{MultiDegree, Word};

/// Calls `visit` on every word of multidegree `d`, in lexicographic order.
pub fn for_each_word(d: &MultiDegree, mut visit: impl FnMut(&[u32])) {
    let vars: Vec<u32> = d.support().collect();
    let mut left: Vec<u32> = vars.iter().map(|&v| d.get(v)).collect();
    let mut cur = Vec::with_capacity(d.total() as usize);
    fn go(
        vars: &[u32],
        left: &mut [u32],
        cur: &mut Vec<u32>,
        total: usize,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if cur.len() == total {
            visit(cur);
            return;
        }
        for i in 0..vars.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(vars[i]);
                go(vars, left, cur, total, visit);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    go(&vars, &mut left, &mut cur, d.total() as usize, &mut visit);
}

/// All words of multidegree `d` in lexicographic order, refusing more than
/// `max_words`.
pub fn component_words(d: &MultiDegree, max_words: u128) -> Result<Vec<Word>> {
    let n = d.word_count();
    if n > max_words {
        return Err(AlgebraError::BudgetExceeded {
            what: "words per component",
            needed: n,
            limit: max_words,
        });
    }
    let mut out = Vec::with_capacity(n as usize);
    for_each_word(d, |w| out.push(Word::new(w.to_vec())));
    Ok(out)
}

/// Calls `visit` with every way to cut `len` letters into `pieces` consecutive
/// parts, given as `pieces + 1` boundaries. Parts flagged in `nonempty` must be
/// nonempty.
pub fn for_each_cut(len: usize, nonempty: &[bool], mut visit: impl FnMut(&[usize])) {
    let mut bounds = vec![0usize; nonempty.len() + 1];
    fn go(
        k: usize,
        len: usize,
        nonempty: &[bool],
        bounds: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if k == nonempty.len() {
            if bounds[k] == len {
                visit(bounds);
            }
            return;
        }
        let start = bounds[k];
        let min = start + usize::from(nonempty[k]);
        let rest: usize = nonempty[k + 1..].iter().filter(|&&b| b).count();
        if min + rest > len {
            return;
        }
        let max = if k + 1 == nonempty.len() {
            len
        } else {
            len - rest
        };
        for end in min..=max {
            bounds[k + 1] = end;
            go(k + 1, len, nonempty, bounds, visit);
        }
    }
    go(0, len, nonempty, &mut bounds, &mut visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(pairs: &[(u32, u32)]) -> MultiDegree {
        MultiDegree::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn bilinear_words() {
        let ws = component_words(&md(&[(1, 1), (2, 1)]), 100).unwrap();
        assert_eq!(ws, vec![Word::new(vec![1, 2]), Word::new(vec![2, 1])]);
    }

    #[test]
    fn word_counts() {
        assert_eq!(
            component_words(&md(&[(1, 2), (2, 1)]), 100).unwrap().len(),
            3
        );
        assert_eq!(
            component_words(&md(&[(1, 3), (2, 3)]), 100).unwrap().len(),
            20
        );
        assert!(matches!(
            component_words(&md(&[(1, 3), (2, 3)]), 10),
            Err(AlgebraError::BudgetExceeded { needed: 20, .. })
        ));
    }

    #[test]
    fn cuts_of_three_letters() {
        let mut seen = Vec::new();
        for_each_cut(3, &[false, true, true, false], |b| seen.push(b.to_vec()));
        // Two nonempty middle parts inside three letters, with optional ends.
        assert_eq!(seen.len(), 4);
        assert!(seen.iter().all(|b| b[1] < b[2] && b[2] < b[3] && b[4] == 3));
    }
}
