#![no_main]

use ballspec::SpectrumTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(table) = SpectrumTable::from_json(text) {
        let back = SpectrumTable::from_json(&table.to_json()).expect("accepted tables round-trip");
        assert_eq!(table, back);
    }
});
