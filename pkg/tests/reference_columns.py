"""Recorded reference datasets: per-server completion times for the three
compared schedulers at three workload sizes (15 servers each), together with
the summary values printed alongside them.  They pin the statistics
conventions: the printed spreads are population standard deviations.
"""

COLUMNS = {
    ("lc", 150): [
        1472.52, 1479.85, 1347.98, 1186.81, 1135.53, 1523.81, 1208.79, 1150.18,
        1963.37, 1619.04, 1399.26, 3838.82, 1040.29, 1062.27, 1582.41,
    ],
    ("wlc", 150): [
        1498.17, 1630.23, 1457.19, 1762.29, 1616.57, 1917.12, 1429.87, 1653.00,
        2099.27, 2404.37, 1853.37, 1584.69, 1621.12, 2026.41, 2026.41,
    ],
    ("awlc", 150): [
        1145.17, 1415.99, 991.826, 1274.30, 1051.70, 1238.14, 1307.90, 1314.36,
        1366.75, 1294.82, 1297.00, 1337.34, 1135.69, 1221.73, 1532.80,
    ],
    ("lc", 1500): [
        18667.88, 20036.50, 17846.72, 12755.47, 10346.72, 18777.37, 13248.18,
        21186.13, 14397.81, 17901.46, 28686.13, 14562.04, 14452.56, 25237.23,
        21897.81,
    ],
    ("wlc", 1500): [
        18581.82, 18727.27, 18818.18, 18818.18, 18845.46, 17745.46, 18545.46,
        16400.00, 18545.46, 19309.09, 18327.27, 18109.09, 19600.00, 19490.91,
        17636.36,
    ],
    ("awlc", 1500): [
        11854.55, 11905.46, 11956.36, 11930.91, 11803.64, 11785.46, 12701.82,
        12040.00, 11658.18, 11174.55, 11250.91, 12701.82, 12472.73, 12600.00,
        11734.55,
    ],
    ("lc", 15000): [
        26660.58, 26113.14, 10401.46, 10675.18, 10456.20, 19051.10, 13850.37,
        14069.34, 27208.03, 17299.27, 17135.04, 20638.69, 14507.30, 10784.67,
        11332.12,
    ],
    ("wlc", 15000): [
        18503.65, 18540.15, 18503.65, 18503.65, 18357.66, 18467.15, 18759.12,
        18321.17, 18175.18, 18613.14, 17883.21, 17919.71, 18613.14, 18357.66,
        18284.67,
    ],
    ("awlc", 15000): [
        13388.81, 13446.11, 13407.91, 13369.71, 13293.32, 13178.72, 13388.81,
        13503.41, 13388.81, 13274.22, 13293.32, 13293.32, 13312.42, 13293.32,
        13331.51,
    ],
}

PRINTED_MEAN = {
    ("lc", 150): 1534.07,
    ("wlc", 150): 1772.01,
    ("awlc", 150): 1261.71,
    ("lc", 1500): 18000.0,
    ("wlc", 1500): 18500.0,
    ("awlc", 1500): 11971.39,
    ("lc", 15000): 16678.83,
    ("wlc", 15000): 18386.86,
    ("awlc", 15000): 13344.25,
}

PRINTED_STDDEV = {
    ("lc", 150): 661.53,
    ("wlc", 150): 267.28,
    ("awlc", 150): 134.17,
    ("lc", 1500): 4783.19,
    ("wlc", 1500): 780.54,
    ("awlc", 1500): 455.27,
    ("lc", 15000): 5878.95,
    ("wlc", 15000): 237.35,
    ("awlc", 15000): 77.56,
}
