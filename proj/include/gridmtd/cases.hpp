#pragma once

// Generated by tools/embed_cases.py -- do not edit by hand.

#include "gridmtd/grid.hpp"

#include <string>
#include <string_view>

namespace gridmtd {
namespace embedded {
inline constexpr std::string_view case6ww = R"json(
{
 "name": "case6ww",
 "base_mva": 100.0,
 "ref_bus": 1,
 "ref_vm": 1.05,
 "buses": [
  {
   "id": 1,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 2,
   "p": 0.5,
   "q": 0.744
  },
  {
   "id": 3,
   "p": 0.6,
   "q": 0.896
  },
  {
   "id": 4,
   "p": -0.7,
   "q": -0.7
  },
  {
   "id": 5,
   "p": -0.7,
   "q": -0.7
  },
  {
   "id": 6,
   "p": -0.7,
   "q": -0.7
  }
 ],
 "branches": [
  {
   "from": 1,
   "to": 2,
   "r": 0.1,
   "x": 0.2
  },
  {
   "from": 1,
   "to": 4,
   "r": 0.05,
   "x": 0.2
  },
  {
   "from": 1,
   "to": 5,
   "r": 0.08,
   "x": 0.3
  },
  {
   "from": 2,
   "to": 3,
   "r": 0.05,
   "x": 0.25
  },
  {
   "from": 2,
   "to": 4,
   "r": 0.05,
   "x": 0.1
  },
  {
   "from": 2,
   "to": 5,
   "r": 0.1,
   "x": 0.3
  },
  {
   "from": 2,
   "to": 6,
   "r": 0.07,
   "x": 0.2
  },
  {
   "from": 3,
   "to": 5,
   "r": 0.12,
   "x": 0.26
  },
  {
   "from": 3,
   "to": 6,
   "r": 0.02,
   "x": 0.1
  },
  {
   "from": 4,
   "to": 5,
   "r": 0.2,
   "x": 0.4
  },
  {
   "from": 5,
   "to": 6,
   "r": 0.1,
   "x": 0.3
  }
 ]
}
)json";

inline constexpr std::string_view case14 = R"json(
{
 "name": "case14",
 "base_mva": 100.0,
 "ref_bus": 1,
 "ref_vm": 1.06,
 "buses": [
  {
   "id": 1,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 2,
   "p": 0.183,
   "q": 0.297
  },
  {
   "id": 3,
   "p": -0.942,
   "q": 0.044
  },
  {
   "id": 4,
   "p": -0.478,
   "q": 0.039
  },
  {
   "id": 5,
   "p": -0.076,
   "q": -0.016
  },
  {
   "id": 6,
   "p": -0.112,
   "q": 0.047
  },
  {
   "id": 7,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 8,
   "p": 0.0,
   "q": 0.174
  },
  {
   "id": 9,
   "p": -0.295,
   "q": -0.166
  },
  {
   "id": 10,
   "p": -0.09,
   "q": -0.058
  },
  {
   "id": 11,
   "p": -0.035,
   "q": -0.018
  },
  {
   "id": 12,
   "p": -0.061,
   "q": -0.016
  },
  {
   "id": 13,
   "p": -0.135,
   "q": -0.058
  },
  {
   "id": 14,
   "p": -0.149,
   "q": -0.05
  }
 ],
 "branches": [
  {
   "from": 1,
   "to": 2,
   "r": 0.01938,
   "x": 0.05917
  },
  {
   "from": 1,
   "to": 5,
   "r": 0.05403,
   "x": 0.22304
  },
  {
   "from": 2,
   "to": 3,
   "r": 0.04699,
   "x": 0.19797
  },
  {
   "from": 2,
   "to": 4,
   "r": 0.05811,
   "x": 0.17632
  },
  {
   "from": 2,
   "to": 5,
   "r": 0.05695,
   "x": 0.17388
  },
  {
   "from": 3,
   "to": 4,
   "r": 0.06701,
   "x": 0.17103
  },
  {
   "from": 4,
   "to": 5,
   "r": 0.01335,
   "x": 0.04211
  },
  {
   "from": 4,
   "to": 7,
   "r": 0.0,
   "x": 0.20912
  },
  {
   "from": 4,
   "to": 9,
   "r": 0.0,
   "x": 0.55618
  },
  {
   "from": 5,
   "to": 6,
   "r": 0.0,
   "x": 0.25202
  },
  {
   "from": 6,
   "to": 11,
   "r": 0.09498,
   "x": 0.1989
  },
  {
   "from": 6,
   "to": 12,
   "r": 0.12291,
   "x": 0.25581
  },
  {
   "from": 6,
   "to": 13,
   "r": 0.06615,
   "x": 0.13027
  },
  {
   "from": 7,
   "to": 8,
   "r": 0.0,
   "x": 0.17615
  },
  {
   "from": 7,
   "to": 9,
   "r": 0.0,
   "x": 0.11001
  },
  {
   "from": 9,
   "to": 10,
   "r": 0.03181,
   "x": 0.0845
  },
  {
   "from": 9,
   "to": 14,
   "r": 0.12711,
   "x": 0.27038
  },
  {
   "from": 10,
   "to": 11,
   "r": 0.08205,
   "x": 0.19207
  },
  {
   "from": 12,
   "to": 13,
   "r": 0.22092,
   "x": 0.19988
  },
  {
   "from": 13,
   "to": 14,
   "r": 0.17093,
   "x": 0.34802
  }
 ]
}
)json";

inline constexpr std::string_view case57 = R"json(
{
 "name": "case57",
 "base_mva": 100.0,
 "ref_bus": 1,
 "ref_vm": 1.04,
 "buses": [
  {
   "id": 1,
   "p": -0.55,
   "q": -0.17
  },
  {
   "id": 2,
   "p": -0.03,
   "q": -0.888
  },
  {
   "id": 3,
   "p": -0.01,
   "q": -0.22
  },
  {
   "id": 4,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 5,
   "p": -0.13,
   "q": -0.04
  },
  {
   "id": 6,
   "p": -0.75,
   "q": -0.012
  },
  {
   "id": 7,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 8,
   "p": 3.0,
   "q": 0.401
  },
  {
   "id": 9,
   "p": -1.21,
   "q": -0.238
  },
  {
   "id": 10,
   "p": -0.05,
   "q": -0.02
  },
  {
   "id": 11,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 12,
   "p": -0.67,
   "q": 1.045
  },
  {
   "id": 13,
   "p": -0.18,
   "q": -0.023
  },
  {
   "id": 14,
   "p": -0.105,
   "q": -0.053
  },
  {
   "id": 15,
   "p": -0.22,
   "q": -0.05
  },
  {
   "id": 16,
   "p": -0.43,
   "q": -0.03
  },
  {
   "id": 17,
   "p": -0.42,
   "q": -0.08
  },
  {
   "id": 18,
   "p": -0.272,
   "q": -0.098
  },
  {
   "id": 19,
   "p": -0.033,
   "q": -0.006
  },
  {
   "id": 20,
   "p": -0.023,
   "q": -0.01
  },
  {
   "id": 21,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 22,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 23,
   "p": -0.063,
   "q": -0.021
  },
  {
   "id": 24,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 25,
   "p": -0.063,
   "q": -0.032
  },
  {
   "id": 26,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 27,
   "p": -0.093,
   "q": -0.005
  },
  {
   "id": 28,
   "p": -0.046,
   "q": -0.023
  },
  {
   "id": 29,
   "p": -0.17,
   "q": -0.026
  },
  {
   "id": 30,
   "p": -0.036,
   "q": -0.018
  },
  {
   "id": 31,
   "p": -0.058,
   "q": -0.029
  },
  {
   "id": 32,
   "p": -0.016,
   "q": -0.008
  },
  {
   "id": 33,
   "p": -0.038,
   "q": -0.019
  },
  {
   "id": 34,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 35,
   "p": -0.06,
   "q": -0.03
  },
  {
   "id": 36,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 37,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 38,
   "p": -0.14,
   "q": -0.07
  },
  {
   "id": 39,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 40,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 41,
   "p": -0.063,
   "q": -0.03
  },
  {
   "id": 42,
   "p": -0.071,
   "q": -0.044
  },
  {
   "id": 43,
   "p": -0.02,
   "q": -0.01
  },
  {
   "id": 44,
   "p": -0.12,
   "q": -0.018
  },
  {
   "id": 45,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 46,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 47,
   "p": -0.297,
   "q": -0.116
  },
  {
   "id": 48,
   "p": 0.0,
   "q": 0.0
  },
  {
   "id": 49,
   "p": -0.18,
   "q": -0.085
  },
  {
   "id": 50,
   "p": -0.21,
   "q": -0.105
  },
  {
   "id": 51,
   "p": -0.18,
   "q": -0.053
  },
  {
   "id": 52,
   "p": -0.049,
   "q": -0.022
  },
  {
   "id": 53,
   "p": -0.2,
   "q": -0.1
  },
  {
   "id": 54,
   "p": -0.041,
   "q": -0.014
  },
  {
   "id": 55,
   "p": -0.068,
   "q": -0.034
  },
  {
   "id": 56,
   "p": -0.076,
   "q": -0.022
  },
  {
   "id": 57,
   "p": -0.067,
   "q": -0.02
  }
 ],
 "branches": [
  {
   "from": 1,
   "to": 2,
   "r": 0.0083,
   "x": 0.028
  },
  {
   "from": 2,
   "to": 3,
   "r": 0.0298,
   "x": 0.085
  },
  {
   "from": 3,
   "to": 4,
   "r": 0.0112,
   "x": 0.0366
  },
  {
   "from": 4,
   "to": 5,
   "r": 0.0625,
   "x": 0.132
  },
  {
   "from": 4,
   "to": 6,
   "r": 0.043,
   "x": 0.148
  },
  {
   "from": 6,
   "to": 7,
   "r": 0.02,
   "x": 0.102
  },
  {
   "from": 6,
   "to": 8,
   "r": 0.0339,
   "x": 0.173
  },
  {
   "from": 8,
   "to": 9,
   "r": 0.0099,
   "x": 0.0505
  },
  {
   "from": 9,
   "to": 10,
   "r": 0.0369,
   "x": 0.1679
  },
  {
   "from": 9,
   "to": 11,
   "r": 0.0258,
   "x": 0.0848
  },
  {
   "from": 9,
   "to": 12,
   "r": 0.0648,
   "x": 0.295
  },
  {
   "from": 9,
   "to": 13,
   "r": 0.0481,
   "x": 0.158
  },
  {
   "from": 13,
   "to": 14,
   "r": 0.0132,
   "x": 0.0434
  },
  {
   "from": 13,
   "to": 15,
   "r": 0.0269,
   "x": 0.0869
  },
  {
   "from": 1,
   "to": 15,
   "r": 0.0178,
   "x": 0.091
  },
  {
   "from": 1,
   "to": 16,
   "r": 0.0454,
   "x": 0.206
  },
  {
   "from": 1,
   "to": 17,
   "r": 0.0238,
   "x": 0.108
  },
  {
   "from": 3,
   "to": 15,
   "r": 0.0162,
   "x": 0.053
  },
  {
   "from": 4,
   "to": 18,
   "r": 0.0,
   "x": 0.555
  },
  {
   "from": 4,
   "to": 18,
   "r": 0.0,
   "x": 0.43
  },
  {
   "from": 5,
   "to": 6,
   "r": 0.0302,
   "x": 0.0641
  },
  {
   "from": 7,
   "to": 8,
   "r": 0.0139,
   "x": 0.0712
  },
  {
   "from": 10,
   "to": 12,
   "r": 0.0277,
   "x": 0.1262
  },
  {
   "from": 11,
   "to": 13,
   "r": 0.0223,
   "x": 0.0732
  },
  {
   "from": 12,
   "to": 13,
   "r": 0.0178,
   "x": 0.058
  },
  {
   "from": 12,
   "to": 16,
   "r": 0.018,
   "x": 0.0813
  },
  {
   "from": 12,
   "to": 17,
   "r": 0.0397,
   "x": 0.179
  },
  {
   "from": 14,
   "to": 15,
   "r": 0.0171,
   "x": 0.0547
  },
  {
   "from": 18,
   "to": 19,
   "r": 0.461,
   "x": 0.685
  },
  {
   "from": 19,
   "to": 20,
   "r": 0.283,
   "x": 0.434
  },
  {
   "from": 21,
   "to": 20,
   "r": 0.0,
   "x": 0.7767
  },
  {
   "from": 21,
   "to": 22,
   "r": 0.0736,
   "x": 0.117
  },
  {
   "from": 22,
   "to": 23,
   "r": 0.0099,
   "x": 0.0152
  },
  {
   "from": 23,
   "to": 24,
   "r": 0.166,
   "x": 0.256
  },
  {
   "from": 24,
   "to": 25,
   "r": 0.0,
   "x": 1.182
  },
  {
   "from": 24,
   "to": 25,
   "r": 0.0,
   "x": 1.23
  },
  {
   "from": 24,
   "to": 26,
   "r": 0.0,
   "x": 0.0473
  },
  {
   "from": 26,
   "to": 27,
   "r": 0.165,
   "x": 0.254
  },
  {
   "from": 27,
   "to": 28,
   "r": 0.0618,
   "x": 0.0954
  },
  {
   "from": 28,
   "to": 29,
   "r": 0.0418,
   "x": 0.0587
  },
  {
   "from": 7,
   "to": 29,
   "r": 0.0,
   "x": 0.0648
  },
  {
   "from": 25,
   "to": 30,
   "r": 0.135,
   "x": 0.202
  },
  {
   "from": 30,
   "to": 31,
   "r": 0.326,
   "x": 0.497
  },
  {
   "from": 31,
   "to": 32,
   "r": 0.507,
   "x": 0.755
  },
  {
   "from": 32,
   "to": 33,
   "r": 0.0392,
   "x": 0.036
  },
  {
   "from": 34,
   "to": 32,
   "r": 0.0,
   "x": 0.953
  },
  {
   "from": 34,
   "to": 35,
   "r": 0.052,
   "x": 0.078
  },
  {
   "from": 35,
   "to": 36,
   "r": 0.043,
   "x": 0.0537
  },
  {
   "from": 36,
   "to": 37,
   "r": 0.029,
   "x": 0.0366
  },
  {
   "from": 37,
   "to": 38,
   "r": 0.0651,
   "x": 0.1009
  },
  {
   "from": 37,
   "to": 39,
   "r": 0.0239,
   "x": 0.0379
  },
  {
   "from": 36,
   "to": 40,
   "r": 0.03,
   "x": 0.0466
  },
  {
   "from": 22,
   "to": 38,
   "r": 0.0192,
   "x": 0.0295
  },
  {
   "from": 11,
   "to": 41,
   "r": 0.0,
   "x": 0.749
  },
  {
   "from": 41,
   "to": 42,
   "r": 0.207,
   "x": 0.352
  },
  {
   "from": 41,
   "to": 43,
   "r": 0.0,
   "x": 0.412
  },
  {
   "from": 38,
   "to": 44,
   "r": 0.0289,
   "x": 0.0585
  },
  {
   "from": 15,
   "to": 45,
   "r": 0.0,
   "x": 0.1042
  },
  {
   "from": 14,
   "to": 46,
   "r": 0.0,
   "x": 0.0735
  },
  {
   "from": 46,
   "to": 47,
   "r": 0.023,
   "x": 0.068
  },
  {
   "from": 47,
   "to": 48,
   "r": 0.0182,
   "x": 0.0233
  },
  {
   "from": 48,
   "to": 49,
   "r": 0.0834,
   "x": 0.129
  },
  {
   "from": 49,
   "to": 50,
   "r": 0.0801,
   "x": 0.128
  },
  {
   "from": 50,
   "to": 51,
   "r": 0.1386,
   "x": 0.22
  },
  {
   "from": 10,
   "to": 51,
   "r": 0.0,
   "x": 0.0712
  },
  {
   "from": 13,
   "to": 49,
   "r": 0.0,
   "x": 0.191
  },
  {
   "from": 29,
   "to": 52,
   "r": 0.1442,
   "x": 0.187
  },
  {
   "from": 52,
   "to": 53,
   "r": 0.0762,
   "x": 0.0984
  },
  {
   "from": 53,
   "to": 54,
   "r": 0.1878,
   "x": 0.232
  },
  {
   "from": 54,
   "to": 55,
   "r": 0.1732,
   "x": 0.2265
  },
  {
   "from": 11,
   "to": 43,
   "r": 0.0,
   "x": 0.153
  },
  {
   "from": 44,
   "to": 45,
   "r": 0.0624,
   "x": 0.1242
  },
  {
   "from": 40,
   "to": 56,
   "r": 0.0,
   "x": 1.195
  },
  {
   "from": 56,
   "to": 41,
   "r": 0.553,
   "x": 0.549
  },
  {
   "from": 56,
   "to": 42,
   "r": 0.2125,
   "x": 0.354
  },
  {
   "from": 39,
   "to": 57,
   "r": 0.0,
   "x": 1.355
  },
  {
   "from": 57,
   "to": 56,
   "r": 0.174,
   "x": 0.26
  },
  {
   "from": 38,
   "to": 49,
   "r": 0.115,
   "x": 0.177
  },
  {
   "from": 38,
   "to": 48,
   "r": 0.0312,
   "x": 0.0482
  },
  {
   "from": 9,
   "to": 55,
   "r": 0.0,
   "x": 0.1205
  }
 ]
}
)json";

}  // namespace embedded

/// Load one of the bundled benchmark cases by name.
inline GridCase builtin_case(const std::string& name, double default_tau = 0.2) {
  if (name == "case6ww") return load_case(std::string(embedded::case6ww), default_tau);
  if (name == "case14") return load_case(std::string(embedded::case14), default_tau);
  if (name == "case57") return load_case(std::string(embedded::case57), default_tau);
  throw GridError("unknown builtin case: " + name);
}

inline std::vector<std::string> builtin_case_names() {
  return {"case6ww", "case14", "case57"};
}

}  // namespace gridmtd
