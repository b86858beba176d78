#![no_main]

use fadof_core::formats::{parse_absorption_csv, write_absorption_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(samples) = parse_absorption_csv(data) {
        let text = write_absorption_csv(&samples);
        let again = parse_absorption_csv(&text).expect("re-parse of written samples");
        assert_eq!(write_absorption_csv(&again), text);
    }
});
