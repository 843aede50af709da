//! Running a computation over every component of a triangular set.

use super::triset::{note_split, note_violation, Halt, TriSet, D5};
use crate::algebra::field::Field;
use crate::algebra::upoly;
use crate::trace;
use crate::Result;

/// Runs `f` on `t`; whenever it reports a split, reruns it on each part (in order)
/// until every component succeeds. Closures move their inputs with
/// [`TriSet::reduce_from`], which is valid because each part refines `t`.
pub fn branch<K: Field, T>(t: &TriSet<K>, f: impl FnMut(&TriSet<K>) -> D5<T, K>) -> Result<Vec<(TriSet<K>, T)>> {
    run(t, f, true)
}

/// As [`branch`], without touching the split counters or the trace.
pub fn branch_quiet<K: Field, T>(t: &TriSet<K>, f: impl FnMut(&TriSet<K>) -> D5<T, K>) -> Result<Vec<(TriSet<K>, T)>> {
    run(t, f, false)
}

fn run<K: Field, T>(
    t: &TriSet<K>,
    mut f: impl FnMut(&TriSet<K>) -> D5<T, K>,
    loud: bool,
) -> Result<Vec<(TriSet<K>, T)>> {
    let mut out = vec![];
    let mut stack = vec![t.clone()];
    while let Some(s) = stack.pop() {
        match f(&s) {
            Ok(v) => out.push((s, v)),
            Err(Halt::Fail(e)) => return Err(e),
            Err(Halt::Split(parts)) => {
                if loud {
                    note_split();
                    check_split(&s, &parts);
                    trace::emit(|| {
                        serde_json::json!({
                            "event": "split",
                            "from_degree": s.degree(),
                            "parts": parts.iter().map(|p| [p.dq(), p.dp()]).collect::<Vec<_>>(),
                        })
                    });
                }
                stack.extend(parts.into_iter().rev());
            }
        }
    }
    Ok(out)
}

/// Degree conservation and refinement of a split; failures are counted, not fatal.
pub fn check_split<K: Field>(s: &TriSet<K>, parts: &[TriSet<K>]) {
    let total: usize = parts.iter().map(|p| p.degree()).sum();
    let ok = total == s.degree()
        && parts.len() >= 2
        && parts.iter().all(|p| p.refines(s) && upoly::deg(p.q()).unwrap_or(0) >= 1);
    debug_assert!(ok, "split of {s:?} into {parts:?} does not conserve degree");
    if !ok {
        note_violation();
    }
}
