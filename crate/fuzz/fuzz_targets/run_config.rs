#![no_main]

use libfuzzer_sys::fuzz_target;

use radma::config::FileConfig;

// Run configuration is read from user-supplied TOML; rejecting malformed
// or hostile input must be a clean error, never a panic.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(fc) = FileConfig::parse(text) {
        let _ = fc.quad_config();
        if let Some(fmt) = &fc.output.format {
            let _ = fmt.parse::<radma::report::Format>();
        }
    }
});
