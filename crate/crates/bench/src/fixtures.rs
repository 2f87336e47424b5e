//! Published single-board-computer timings, transcribed into the results
//! CSV schema. These are reference data, not measurements made here; see
//! `fixtures/reference/README.md`.

use cipherbench_core::ModeId;

use crate::harness::BenchResult;
use crate::report::parse_results_csv;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Device {
    RaspberryPi3,
    BeagleBoneBlack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceFixture {
    Pi3Ecb,
    Pi3Cbc,
    Pi3Stream,
    BbbEcb,
    BbbCbc,
    BbbStream,
}

impl ReferenceFixture {
    pub const ALL: [ReferenceFixture; 6] = [
        ReferenceFixture::Pi3Ecb,
        ReferenceFixture::Pi3Cbc,
        ReferenceFixture::Pi3Stream,
        ReferenceFixture::BbbEcb,
        ReferenceFixture::BbbCbc,
        ReferenceFixture::BbbStream,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReferenceFixture::Pi3Ecb => "pi3_ecb",
            ReferenceFixture::Pi3Cbc => "pi3_cbc",
            ReferenceFixture::Pi3Stream => "pi3_stream",
            ReferenceFixture::BbbEcb => "bbb_ecb",
            ReferenceFixture::BbbCbc => "bbb_cbc",
            ReferenceFixture::BbbStream => "bbb_stream",
        }
    }

    pub fn csv(self) -> &'static str {
        match self {
            ReferenceFixture::Pi3Ecb => include_str!("../fixtures/reference/pi3_ecb.csv"),
            ReferenceFixture::Pi3Cbc => include_str!("../fixtures/reference/pi3_cbc.csv"),
            ReferenceFixture::Pi3Stream => include_str!("../fixtures/reference/pi3_stream.csv"),
            ReferenceFixture::BbbEcb => include_str!("../fixtures/reference/bbb_ecb.csv"),
            ReferenceFixture::BbbCbc => include_str!("../fixtures/reference/bbb_cbc.csv"),
            ReferenceFixture::BbbStream => include_str!("../fixtures/reference/bbb_stream.csv"),
        }
    }

    pub fn device(self) -> Device {
        match self {
            ReferenceFixture::Pi3Ecb | ReferenceFixture::Pi3Cbc | ReferenceFixture::Pi3Stream => {
                Device::RaspberryPi3
            }
            _ => Device::BeagleBoneBlack,
        }
    }

    pub fn mode(self) -> ModeId {
        match self {
            ReferenceFixture::Pi3Ecb | ReferenceFixture::BbbEcb => ModeId::Ecb,
            ReferenceFixture::Pi3Cbc | ReferenceFixture::BbbCbc => ModeId::Cbc,
            ReferenceFixture::Pi3Stream | ReferenceFixture::BbbStream => ModeId::Stream,
        }
    }

    /// Every transcribed cell.
    pub fn results(self) -> Vec<BenchResult> {
        parse_results_csv(self.csv()).expect("bundled fixture parses")
    }

    /// Cells used for rankings. The BeagleBone 1 MB rows are about 200
    /// times too fast relative to 2 MB and are left out.
    pub fn comparison_results(self) -> Vec<BenchResult> {
        let mut results = self.results();
        if self.device() == Device::BeagleBoneBlack {
            results.retain(|r| r.size_mb != 1);
        }
        results
    }

    pub fn for_device(device: Device) -> impl Iterator<Item = ReferenceFixture> {
        ReferenceFixture::ALL
            .into_iter()
            .filter(move |f| f.device() == device)
    }
}
