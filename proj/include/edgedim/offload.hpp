#pragma once

namespace edgedim {

/// Video traffic per unit area. Frames are s x s pixels.
struct TrafficModel
{
    double lambda_rate = 100.0;  ///< frames / s / km^2
    double theta_bits = 24.0;    ///< bits per pixel
    double xi_compress = 2.0;    ///< compression ratio, >= 1
    double s_resolution = 0.0;   ///< pixels per side; 0 until resolved

    void validate() const;

    /// theta s^2 / xi.
    double payload_bits(double s) const;

    bool operator==(const TrafficModel&) const = default;
};

/// Inference cost T_s = (c1 s^3 + c2) / H and accuracy a(s) = c3 - c4 exp(-c5 s).
/// c1, c2 are in TFLOP, H in TFLOPS.
struct InferenceModel
{
    double c1 = 7e-10;
    double c2 = 0.083;
    double c3 = 1.0;
    double c4 = 1.578;
    double c5 = 6.5e-3;
    double h_capacity = 1.0;

    void validate() const;
    bool operator==(const InferenceModel&) const = default;
};

/// payload_bits(s_resolution) / rate.
double uplink_time(const TrafficModel& traffic, double rate);

/// (c1 s^3 + c2) / h_capacity.
double service_time(const InferenceModel& inf, double s);

double accuracy(const InferenceModel& inf, double s);

/// Smallest s >= 0 with accuracy(s) >= a_min: (1/c5) ln(c4 / (c3 - a_min)), floored at 0.
double min_resolution(const InferenceModel& inf, double a_min);

/// P(T_w > t) for the M/D/1 queue with load rho and service time t_s.
///
/// Evaluated with a positive-term recursion on the integer grid t / t_s = k
/// and a Poisson mixture in between, which keeps the absolute error near
/// machine precision for any t. Values below ~1e-14 are returned as 0.
double mdone_wait_ccdf(double rho, double t_s, double t);

/// The same CCDF by the classical alternating Erlang series, with the terms
/// formed in log-magnitude and summed with compensation. The series cancels
/// catastrophically as t / t_s grows; it is kept as an independent check for
/// t / t_s up to about 20 and throws DomainError beyond 60.
double mdone_wait_ccdf_series(double rho, double t_s, double t);

/// Smallest t >= 0 with mdone_wait_ccdf(rho, t_s, t) <= p_tail, to 1e-9 t_s.
double mdone_wait_quantile(double rho, double t_s, double p_tail);

}  // namespace edgedim
