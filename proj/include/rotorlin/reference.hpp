#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace rotorlin::reference {

/// Published scalar trim values of the X-Cell 60 study.
struct Scalar {
    const char* key;
    double value;
    const char* unit;
};

inline const std::vector<Scalar>& hover_trim() {
    static const std::vector<Scalar> v = {
        {"T_MR", 81.616, "N"},          {"CT_MR", 0.002256, "-"},
        {"Q_MR", 6.247, "N m"},         {"CQ_MR", 0.0002228, "-"},
        {"w_iMR", 4.582, "m/s"},        {"theta0_MR", 0.1047, "rad"},
        {"T_TR", 6.8656, "N"},          {"CT_TR", 0.01329, "-"},
        {"Q_TR", 0.1268, "N m"},        {"CQ_TR", 0.001568, "-"},
        {"v_iTR", 8.693, "m/s"},        {"theta0_TR", 0.2412, "rad"},
        {"a1s", 0.0014258, "rad"},      {"d_long", 0.0003395, "rad"},
        {"b1s", 0.0074866, "rad"},      {"d_lat", 0.001783, "rad"},
        {"theta", -0.0014471, "rad"},   {"phi", 0.077643, "rad"},
    };
    return v;
}

inline const std::vector<Scalar>& forward_trim() {
    static const std::vector<Scalar> v = {
        {"T_MR", 82.145, "N"},          {"CT_MR", 0.002270, "-"},
        {"Q_MR", 4.660, "N m"},         {"CQ_MR", 0.000166, "-"},
        {"w_iMR", 1.272, "m/s"},        {"theta0_MR", 0.0622, "rad"},
        {"T_TR", 5.1032, "N"},          {"CT_TR", 0.00988, "-"},
        {"Q_TR", 0.0571, "N m"},        {"CQ_TR", 0.000706, "-"},
        {"v_iTR", 3.336, "m/s"},        {"theta0_TR", 0.1171, "rad"},
        {"a1s", 0.00547335, "rad"},     {"d_long", 0.00039302, "rad"},
        {"b1s", 0.00558899, "rad"},     {"d_lat", 0.001613, "rad"},
        {"theta", -0.203044, "rad"},    {"phi", 0.0790896, "rad"},
    };
    return v;
}

/// Forward-flight trim velocity, m/s.
constexpr double kForwardU = 16.5557, kForwardV = 0.7456, kForwardW = 0.2585;

inline Eigen::MatrixXd hover_long_A() {
    Eigen::MatrixXd A(5, 5);
    A << -0.0352, 0, 0.9953, -9.8066, -9.9532,
         0, -0.096, 0, 0.0161, 0.0161,
         0.0693, 0, -21.5235, 0, 102.4125,
         0, 0, 0.997, 0, 0,
         0.0032, 0, -1, 0, -10;
    return A;
}

inline Eigen::MatrixXd hover_long_B() {
    Eigen::MatrixXd B(5, 2);
    B << -0.2063, -41.8033,
         124.4615, 0,
         1.1691, 903.9850,
         0, 0,
         0, 42;
    return B;
}

inline Eigen::MatrixXd hover_lat_A() {
    Eigen::MatrixXd A(5, 5);
    A << -0.0698, -0.9953, 0, 9.7771, -9.9529,
         0.1212, -40.6551, 0, 0, 193.4487,
         0.0708, 0, 0.0001, 0, 0,
         0, 1, -0.0016, 0, 0,
         0.0032, -1, 0, 0, -10;
    return A;
}

inline Eigen::MatrixXd hover_lat_B() {
    Eigen::MatrixXd B(5, 2);
    B << -4.7246, 41.8026,
         -17.2186, 1707.5153,
         125.9109, 0,
         0, 0,
         0, 42;
    return B;
}

inline Eigen::MatrixXd forward_long_A() {
    Eigen::MatrixXd A(4, 4);
    A << -0.2339, -0.0072, 0.7432, -9.6060,
         -0.1422, -1.8927, 16.5294, 1.9675,
         0.3534, -0.2983, -22.0095, 0,
         0, 0, 0.9969, 0;
    return A;
}

/// Printed with a fifth (flapping) row against the 4x4 system matrix.
inline Eigen::MatrixXd forward_long_B() {
    Eigen::MatrixXd B(5, 2);
    B << -1.6635, -42.0612,
         -149.4974, 0,
         37.9729, 905.2517,
         0, 0,
         0, 42;
    return B;
}

inline Eigen::MatrixXd forward_lat_A() {
    Eigen::MatrixXd A(4, 4);
    A << -0.3468, -0.7485, -16.5191, 9.576,
         -0.2366, -40.7435, 0.1335, 0,
         2.5045, 0.1406, -0.976, 0,
         0, 1, -0.2048, 0;
    return A;
}

inline Eigen::MatrixXd forward_lat_B() {
    Eigen::MatrixXd B(4, 2);
    B << -4.8, 42.1,
         -17.4, 1709.9,
         127.4, 0,
         0, 0;
    return B;
}

using cd = std::complex<double>;

inline std::vector<cd> hover_long_eigs() {
    return {{-0.096, 0}, {-0.0155, 0.177}, {-0.0155, -0.177}, {-15.8, 8.32}, {-15.8, -8.32}};
}
inline std::vector<cd> hover_lat_eigs() {
    return {{0.0454, 0}, {0.108, 0}, {-0.227, 0}, {-18.9, 0}, {-31.8, 0}};
}
inline std::vector<cd> forward_long_eigs() {
    return {{-0.116, 0.370}, {-0.116, -0.370}, {-2.12, 0}, {-21.8, 0}};
}
inline std::vector<cd> forward_lat_eigs() {
    return {{-0.117, 0}, {-0.6, 6.42}, {-0.6, -6.42}, {-40.7, 0}};
}

}  // namespace rotorlin::reference
