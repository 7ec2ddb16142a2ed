#![no_main]

use ballspec::SpectrumTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(table) = SpectrumTable::from_csv(text) {
        let csv = table.to_csv();
        let back = SpectrumTable::from_csv(&csv).expect("accepted tables round-trip");
        assert_eq!(table.records, back.records);
    }
});
