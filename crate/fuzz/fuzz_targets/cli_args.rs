#![no_main]

use libfuzzer_sys::fuzz_target;

// NUL-separated argv; parsing only, no computation.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let argv = std::iter::once("ballspec").chain(text.split('\0'));
    let _ = ballspec_cli::parse_command(argv);
});
