/// Exceptional bad strings for grouping, `X_1..X_8`.
pub const GROUPING_EXCEPTIONS: [&str; 8] = [
    "210212",
    "021012",
    "0120212",
    "1201212",
    "02101212",
    "20210212",
    "020210212",
    "120120212",
];

/// Exceptional bad strings for sorting, `Y_1..Y_77`.
pub const SORTING_EXCEPTIONS: [&str; 77] = [
    "210212",
    "021012",
    "212012",
    "120102",
    "201202",
    "0210202",
    "1021202",
    "0212012",
    "2120102",
    "0102102",
    "1212012",
    "2010212",
    "0120212",
    "1201012",
    "1201212",
    "2012012",
    "10210212",
    "21021212",
    "02102012",
    "02101212",
    "10212012",
    "02121012",
    "02120102",
    "10102102",
    "02010212",
    "21202012",
    "21201012",
    "21201202",
    "20210212",
    "01021202",
    "01020212",
    "20212012",
    "12120102",
    "12010212",
    "12010202",
    "20120102",
    "12012012",
    "021021202",
    "102120102",
    "102010212",
    "021202012",
    "021201012",
    "020210212",
    "101020212",
    "020212012",
    "212010202",
    "212012012",
    "010210212",
    "010210202",
    "010212012",
    "202010212",
    "121202012",
    "121201202",
    "201021202",
    "120212012",
    "012021212",
    "120102012",
    "201202012",
    "120120212",
    "201201012",
    "0210212012",
    "1021202012",
    "1021201012",
    "1020210212",
    "1010210202",
    "0202010212",
    "2120202012",
    "2120102012",
    "2021021212",
    "2010212012",
    "1201021202",
    "1201202012",
    "10202010212",
    "02120102012",
    "02021021212",
    "21201202012",
    "12120202012",
];
