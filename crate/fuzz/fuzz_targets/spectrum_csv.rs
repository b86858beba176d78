#![no_main]

use fadof_core::formats::{parse_spectrum_csv, write_spectrum_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(points) = parse_spectrum_csv(data) {
        let text = write_spectrum_csv(&points);
        let again = parse_spectrum_csv(&text).expect("re-parse of written spectrum");
        assert_eq!(write_spectrum_csv(&again), text);
    }
});
