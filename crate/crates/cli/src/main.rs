use std::io::Write;

use chrono::{DateTime, TimeZone, Utc};

/// `SOURCE_DATE_EPOCH` when set and valid, else the system clock.
fn now() -> DateTime<Utc> {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.trim().parse::<i64>().ok())
        .and_then(|secs| Utc.timestamp_opt(secs, 0).single())
        .unwrap_or_else(Utc::now)
}

fn main() {
    let args: Vec<_> = std::env::args_os().collect();
    let out = match std::panic::catch_unwind(|| hadamard_rect::run(args, now())) {
        Ok(o) => o,
        Err(_) => hadamard_rect::Outcome {
            code: hadamard_rect::EXIT_FAIL,
            stdout: Vec::new(),
            stderr: "internal error\n".into(),
        },
    };
    let _ = std::io::stdout().write_all(&out.stdout);
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
