//! Taylor expansions of the fitted coefficients about H = 0.
//!
//! Each table lists the coefficients of H^0, H^2, ..., H^16 as exact
//! rationals (numerator, denominator). Coefficients a method does not solve
//! for are constants and have no table.

type Table = [(f64, f64); 9];

pub(crate) const PL1_A0: Table = [
    (1.0, 200.0),
    (1.0, 5040.0),
    (1.0, 144000.0),
    (1.0, 4435200.0),
    (691.0, 99066240000.0),
    (1.0, 4790016000.0),
    (3617.0, 592812380160000.0),
    (43867.0, 250445794959360000.0),
    (174611.0, 35213055381504000000.0),
];

pub(crate) const PL2_A0: Table = [
    (1.0, 200.0),
    (1.0, 3780.0),
    (73.0, 5443200.0),
    (509.0, 769824000.0),
    (2833543.0, 88268019840000.0),
    (4912333.0, 3177648714240000.0),
    (288303913.0, 3889442026229760000.0),
    (165095552521.0, 46556621053970227200000.0),
    (15619496804053.0, 92182109686861049856000000.0),
];

pub(crate) const PL2_C1: Table = [
    (-2.0, 1.0),
    (0.0, 1.0),
    (0.0, 1.0),
    (0.0, 1.0),
    (1.0, 18144.0),
    (13.0, 16329600.0),
    (31.0, 461894400.0),
    (308851.0, 105921623808000.0),
    (537907.0, 3813178457088000.0),
];

pub(crate) const PL3_A0: Table = [
    (1.0, 200.0),
    (1.0, 2520.0),
    (31.0, 907200.0),
    (1229.0, 1197504000.0),
    (18427.0, 980755776000.0),
    (-669341.0, 98075577600000.0),
    (-13764419.0, 25184162304000000.0),
    (-281298850211.0, 5747730994317312000000.0),
    (-161773544323.0, 103459157897711616000000.0),
];

pub(crate) const PL3_C1: Table = [
    (-2.0, 1.0),
    (0.0, 1.0),
    (0.0, 1.0),
    (0.0, 1.0),
    (-1.0, 6048.0),
    (-17.0, 2721600.0),
    (-43.0, 57480192.0),
    (-1515133.0, 23538138624000.0),
    (-25819.0, 4483454976000.0),
];

pub(crate) const PL3_B1: Table = [
    (5.0, 6.0),
    (0.0, 1.0),
    (0.0, 1.0),
    (1.0, 3024.0),
    (11.0, 725760.0),
    (2353.0, 1437004800.0),
    (186533.0, 1307674368000.0),
    (112457.0, 8826801984000.0),
    (1635421.0, 1440534083788800.0),
];

pub(crate) const PL4_A0: Table = [
    (1.0, 200.0),
    (1.0, 1260.0),
    (29.0, 504000.0),
    (1433.0, 1164240000.0),
    (-63101.0, 363242880000.0),
    (-2228861.0, 127135008000000.0),
    (-8804897.0, 77806624896000000.0),
    (240953700049.0, 2048959660011264000000.0),
    (9699610781879.0, 819583864004505600000000.0),
];

pub(crate) const PL4_C1: Table = [
    (-2.0, 1.0),
    (0.0, 1.0),
    (0.0, 1.0),
    (0.0, 1.0),
    (1.0, 6048.0),
    (1.0, 43200.0),
    (1.0, 532224.0),
    (41.0, 5943974400.0),
    (-601.0, 24141680640.0),
];

pub(crate) const PL4_B0: Table = [
    (1.0, 12.0),
    (0.0, 1.0),
    (-1.0, 1008.0),
    (-31.0, 181440.0),
    (-221.0, 13685760.0),
    (-619.0, 1345344000.0),
    (25031.0, 174356582400.0),
    (84256583.0, 2667655710720000.0),
    (1030007057.0, 290289444157440000.0),
];

pub(crate) const PL4_B1: Table = [
    (5.0, 6.0),
    (0.0, 1.0),
    (1.0, 504.0),
    (-29.0, 90720.0),
    (-3271.0, 47900160.0),
    (-35293.0, 4540536000.0),
    (-36019.0, 87178291200.0),
    (47333617.0, 1333827855360000.0),
    (294008389.0, 24562952967168000.0),
];

/// Horner evaluation in H^2.
pub(crate) fn eval(table: &Table, h: f64) -> f64 {
    let u = h * h;
    table
        .iter()
        .rev()
        .fold(0.0, |acc, &(num, den)| acc * u + num / den)
}

/// The table without its constant term: `eval(table, h) - eval(table, 0)`,
/// free of the cancellation that subtraction would cause.
pub(crate) fn eval_excess(table: &Table, h: f64) -> f64 {
    let u = h * h;
    table[1..]
        .iter()
        .rev()
        .fold(0.0, |acc, &(num, den)| acc * u + num / den)
        * u
}
