//! Multiply-accumulate counter for the instrumented matrix kernels.
//!
//! The counter is thread-local, so a measurement only sees kernels that run
//! on the calling thread.

use std::cell::Cell;

thread_local! {
    static MACS: Cell<u64> = const { Cell::new(0) };
}

#[inline]
pub(crate) fn record(n: usize) {
    MACS.with(|c| c.set(c.get().wrapping_add(n as u64)));
}

/// Runs `f` and returns its result with the number of complex
/// multiply-accumulates performed by instrumented kernels on this thread.
pub fn count_macs<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let before = MACS.with(Cell::get);
    let out = f();
    let after = MACS.with(Cell::get);
    (out, after.wrapping_sub(before))
}
