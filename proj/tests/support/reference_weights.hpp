#pragma once

#include <array>

namespace floodrisk::testing {

struct ReferenceRow {
  int prj;
  int s_e;
  int s_r_den;
  int e_r_den;
  std::array<double, 5> w;
  double lambda_max;
  double cr;
};

inline constexpr std::array<ReferenceRow, 48> kReferenceWeights{{
    {1, 4, 2, 3, {0.214, 0.068, 0.302, 0.100, 0.315}, 5.133, 0.030},
    {2, 4, 2, 4, {0.211, 0.063, 0.314, 0.099, 0.314}, 5.097, 0.022},
    {3, 4, 2, 5, {0.208, 0.060, 0.323, 0.098, 0.311}, 5.084, 0.019},
    {4, 4, 2, 6, {0.206, 0.057, 0.331, 0.097, 0.309}, 5.081, 0.018},
    {5, 4, 3, 3, {0.197, 0.068, 0.331, 0.098, 0.306}, 5.212, 0.047},
    {6, 4, 3, 4, {0.194, 0.062, 0.342, 0.097, 0.305}, 5.165, 0.037},
    {7, 4, 3, 5, {0.191, 0.058, 0.351, 0.096, 0.303}, 5.143, 0.032},
    {8, 4, 3, 6, {0.188, 0.056, 0.359, 0.095, 0.301}, 5.134, 0.030},
    {9, 5, 2, 3, {0.223, 0.065, 0.300, 0.098, 0.313}, 5.163, 0.036},
    {10, 5, 2, 4, {0.220, 0.060, 0.311, 0.097, 0.311}, 5.121, 0.027},
    {11, 5, 2, 5, {0.217, 0.057, 0.321, 0.096, 0.310}, 5.104, 0.023},
    {12, 5, 2, 6, {0.214, 0.054, 0.329, 0.096, 0.308}, 5.098, 0.022},
    {13, 5, 3, 3, {0.206, 0.064, 0.330, 0.096, 0.303}, 5.251, 0.056},
    {14, 5, 3, 4, {0.202, 0.059, 0.341, 0.095, 0.302}, 5.197, 0.044},
    {15, 5, 3, 5, {0.199, 0.056, 0.350, 0.095, 0.301}, 5.171, 0.038},
    {16, 5, 3, 6, {0.196, 0.053, 0.358, 0.094, 0.299}, 5.158, 0.035},
    {17, 6, 2, 3, {0.232, 0.063, 0.298, 0.097, 0.310}, 5.198, 0.044},
    {18, 6, 2, 4, {0.228, 0.058, 0.309, 0.096, 0.309}, 5.151, 0.034},
    {19, 6, 2, 5, {0.224, 0.055, 0.318, 0.095, 0.308}, 5.129, 0.029},
    {20, 6, 2, 6, {0.221, 0.052, 0.326, 0.094, 0.306}, 5.121, 0.027},
    {21, 6, 3, 3, {0.214, 0.062, 0.329, 0.095, 0.300}, 5.293, 0.065},
    {22, 6, 3, 4, {0.210, 0.057, 0.340, 0.094, 0.300}, 5.233, 0.052},
    {23, 6, 3, 5, {0.206, 0.054, 0.348, 0.093, 0.299}, 5.203, 0.045},
    {24, 6, 3, 6, {0.203, 0.051, 0.356, 0.093, 0.297}, 5.188, 0.042},
    {25, 7, 2, 3, {0.239, 0.061, 0.296, 0.095, 0.308}, 5.234, 0.052},
    {26, 7, 2, 4, {0.235, 0.056, 0.307, 0.094, 0.307}, 5.183, 0.041},
    {27, 7, 2, 5, {0.231, 0.053, 0.316, 0.094, 0.306}, 5.158, 0.035},
    {28, 7, 2, 6, {0.228, 0.050, 0.324, 0.093, 0.304}, 5.147, 0.033},
    {29, 7, 3, 3, {0.221, 0.060, 0.328, 0.093, 0.298}, 5.336, 0.075},
    {30, 7, 3, 4, {0.217, 0.055, 0.338, 0.092, 0.297}, 5.272, 0.061},
    {31, 7, 3, 5, {0.213, 0.052, 0.347, 0.092, 0.296}, 5.238, 0.053},
    {32, 7, 3, 6, {0.210, 0.049, 0.354, 0.091, 0.295}, 5.220, 0.049},
    {33, 8, 2, 3, {0.247, 0.059, 0.295, 0.094, 0.306}, 5.271, 0.061},
    {34, 8, 2, 4, {0.242, 0.054, 0.305, 0.093, 0.305}, 5.216, 0.048},
    {35, 8, 2, 5, {0.238, 0.051, 0.314, 0.093, 0.304}, 5.188, 0.042},
    {36, 8, 2, 6, {0.235, 0.049, 0.322, 0.092, 0.303}, 5.175, 0.039},
    {37, 8, 3, 3, {0.228, 0.059, 0.327, 0.092, 0.295}, 5.380, 0.085},
    {38, 8, 3, 4, {0.223, 0.054, 0.337, 0.091, 0.295}, 5.311, 0.069},
    {39, 8, 3, 5, {0.219, 0.050, 0.345, 0.090, 0.294}, 5.273, 0.061},
    {40, 8, 3, 6, {0.216, 0.048, 0.353, 0.090, 0.293}, 5.253, 0.056},
    {41, 9, 2, 3, {0.254, 0.058, 0.293, 0.093, 0.304}, 5.308, 0.069},
    {42, 9, 2, 4, {0.249, 0.053, 0.303, 0.092, 0.303}, 5.249, 0.056},
    {43, 9, 2, 5, {0.244, 0.050, 0.312, 0.092, 0.302}, 5.219, 0.049},
    {44, 9, 2, 6, {0.241, 0.048, 0.319, 0.091, 0.301}, 5.204, 0.046},
    {45, 9, 3, 3, {0.235, 0.057, 0.325, 0.090, 0.293}, 5.423, 0.095},
    {46, 9, 3, 4, {0.230, 0.052, 0.336, 0.090, 0.293}, 5.350, 0.078},
    {47, 9, 3, 5, {0.225, 0.049, 0.344, 0.089, 0.292}, 5.309, 0.069},
    {48, 9, 3, 6, {0.222, 0.047, 0.351, 0.089, 0.291}, 5.286, 0.064},
}};

}  // namespace floodrisk::testing
