from harmonic_ctc.date.date import report_timestamp
