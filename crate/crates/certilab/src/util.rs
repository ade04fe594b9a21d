use std::ops::Range;

/// Splits `0..total` into at most `workers` contiguous chunks, runs `work`
/// on each chunk (on scoped threads when more than one chunk is used), and
/// returns the per-chunk results in chunk order.
pub(crate) fn parallel_chunks<T, F>(total: u64, workers: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let workers = workers.max(1).min(total.max(1) as usize);
    if workers <= 1 {
        return vec![work(0..total)];
    }
    let chunk = total.div_ceil(workers as u64);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|i| {
                let start = i * chunk;
                let end = ((i + 1) * chunk).min(total);
                let work = &work;
                scope.spawn(move || work(start..end))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    })
}
