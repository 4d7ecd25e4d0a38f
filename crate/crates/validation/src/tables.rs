//! Published placement results for the IEEE 14, 57 and 118 bus systems,
//! stored verbatim. Stated counts are kept apart from the bus lists because
//! a few rows disagree with themselves.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Study {
    /// Base case without zero-injection inference.
    Plain,
    /// Base case with zero-injection inference.
    Zib,
    /// Single PMU loss, zero-injection inference on.
    PmuLoss,
    /// Single line outage, zero-injection inference on.
    LineOutage,
}

impl Study {
    pub const ALL: [Study; 4] = [Study::Plain, Study::Zib, Study::PmuLoss, Study::LineOutage];

    pub fn label(self) -> &'static str {
        match self {
            Study::Plain => "base",
            Study::Zib => "base+zib",
            Study::PmuLoss => "pmu-loss+zib",
            Study::LineOutage => "line-outage+zib",
        }
    }

    /// Regime flags understood by `pmuplace`.
    pub fn cli_flags(self) -> &'static [&'static str] {
        match self {
            Study::Plain => &["--regime", "base"],
            Study::Zib => &["--regime", "base", "--zib"],
            Study::PmuLoss => &[
                "--regime",
                "pmu-loss",
                "--pmu-loss-mode",
                "removal-sim",
                "--zib",
            ],
            Study::LineOutage => &["--regime", "line-outage", "--zib"],
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PublishedRow {
    pub study: Study,
    pub case: &'static str,
    pub stated: usize,
    pub buses: &'static [usize],
}

impl PublishedRow {
    /// True when the stated count equals the number of listed buses.
    pub fn consistent(&self) -> bool {
        self.stated == self.buses.len()
    }

    pub fn bus_list(&self) -> String {
        let parts: Vec<String> = self.buses.iter().map(ToString::to_string).collect();
        parts.join(",")
    }
}

pub const ZIB: [(&str, &[usize]); 3] = [
    ("ieee14", &[7]),
    (
        "ieee57",
        &[4, 7, 11, 21, 22, 24, 26, 34, 36, 37, 39, 40, 45, 46, 48],
    ),
    ("ieee118", &[5, 9, 30, 37, 38, 63, 64, 68, 71, 81]),
];

pub const ROWS: [PublishedRow; 12] = [
    PublishedRow {
        study: Study::Plain,
        case: "ieee14",
        stated: 4,
        buses: &[2, 6, 7, 9],
    },
    PublishedRow {
        study: Study::Plain,
        case: "ieee57",
        stated: 16,
        buses: &[4, 7, 11, 21, 22, 24, 26, 34, 36, 37, 39, 40, 45, 46, 48],
    },
    PublishedRow {
        study: Study::Plain,
        case: "ieee118",
        stated: 32,
        buses: &[
            2, 5, 9, 11, 15, 17, 23, 25, 29, 34, 37, 41, 45, 49, 53, 56, 62, 66, 68, 70, 71, 75,
            77, 80, 85, 86, 91, 94, 102, 105, 110, 114,
        ],
    },
    PublishedRow {
        study: Study::Zib,
        case: "ieee14",
        stated: 3,
        buses: &[2, 6, 9],
    },
    PublishedRow {
        study: Study::Zib,
        case: "ieee57",
        stated: 11,
        buses: &[1, 6, 13, 19, 25, 29, 32, 38, 41, 51, 54, 46, 48],
    },
    PublishedRow {
        study: Study::Zib,
        case: "ieee118",
        stated: 27,
        buses: &[
            3, 8, 11, 12, 19, 22, 27, 31, 32, 34, 37, 40, 45, 49, 53, 56, 62, 75, 77, 80, 85, 86,
            90, 94, 101, 105, 110,
        ],
    },
    PublishedRow {
        study: Study::PmuLoss,
        case: "ieee14",
        stated: 7,
        buses: &[1, 2, 4, 6, 9, 10, 13],
    },
    PublishedRow {
        study: Study::PmuLoss,
        case: "ieee57",
        stated: 25,
        buses: &[
            1, 3, 4, 6, 9, 10, 12, 13, 15, 18, 20, 25, 27, 29, 30, 32, 33, 37, 39, 41, 49, 50, 53,
            54, 56,
        ],
    },
    PublishedRow {
        study: Study::PmuLoss,
        case: "ieee118",
        stated: 61,
        buses: &[
            1, 3, 7, 8, 9, 11, 12, 15, 17, 19, 21, 22, 23, 24, 27, 29, 31, 32, 34, 35, 40, 42, 44,
            45, 46, 49, 51, 52, 54, 56, 57, 59, 62, 66, 68, 70, 71, 75, 76, 77, 78, 80, 83, 85, 86,
            87, 89, 91, 92, 94, 96, 100, 101, 105, 106, 108, 110, 111, 112, 115, 117,
        ],
    },
    PublishedRow {
        study: Study::LineOutage,
        case: "ieee14",
        stated: 7,
        buses: &[2, 4, 6, 7, 9, 10, 13],
    },
    PublishedRow {
        study: Study::LineOutage,
        case: "ieee57",
        stated: 19,
        buses: &[
            1, 3, 6, 12, 14, 19, 21, 27, 29, 30, 32, 33, 41, 44, 49, 51, 53, 55, 56,
        ],
    },
    PublishedRow {
        study: Study::LineOutage,
        case: "ieee118",
        stated: 53,
        buses: &[
            1, 7, 10, 11, 13, 15, 17, 19, 21, 23, 24, 25, 27, 29, 32, 34, 35, 40, 42, 44, 46, 49,
            51, 53, 56, 58, 59, 63, 69, 70, 73, 75, 76, 78, 80, 83, 85, 87, 89, 91, 92, 94, 96,
            100, 102, 105, 106, 109, 111, 112, 115, 116, 117, 118,
        ],
    },
];

pub fn row(study: Study, case: &str) -> PublishedRow {
    *ROWS
        .iter()
        .find(|r| r.study == study && r.case == case)
        .expect("every study has a row per case")
}
