//! Optional JSON-lines event log of the recursion, enabled per thread.

use std::cell::RefCell;

use serde_json::Value;

thread_local! {
    static SINK: RefCell<Option<Vec<Value>>> = const { RefCell::new(None) };
}

/// Starts collecting events on this thread, discarding earlier ones.
pub fn start() {
    SINK.with(|s| *s.borrow_mut() = Some(vec![]));
}

/// Stops collecting and returns the events gathered since [`start`].
pub fn finish() -> Vec<Value> {
    SINK.with(|s| s.borrow_mut().take().unwrap_or_default())
}

/// Records an event; the closure only runs while tracing is on.
pub fn emit(f: impl FnOnce() -> Value) {
    SINK.with(|s| {
        if let Some(v) = s.borrow_mut().as_mut() {
            v.push(f());
        }
    });
}
