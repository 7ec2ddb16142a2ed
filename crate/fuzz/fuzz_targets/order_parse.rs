#![no_main]

use ballspec::Order;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(nu) = text.parse::<Order>() {
        let again: Order = nu.to_string().parse().expect("display output parses");
        assert_eq!(nu, again);
    }
});
