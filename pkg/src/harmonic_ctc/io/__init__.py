from harmonic_ctc.io.workers import worker_count, map_ordered
