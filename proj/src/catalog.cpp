// Formulas follow the Surjanovic-Bingham and AMPGO collections; each is
// pinned by the tabulated minimum in tests.

#include <array>
#include <cmath>
#include <numbers>

#include "xrego/errors.hpp"
#include "xrego/problems.hpp"

namespace xrego {
namespace {

using std::cos;
using std::exp;
using std::sin;
constexpr double pi = std::numbers::pi;

double sq(double x) { return x * x; }

double beale(const double* x) {
    const double a = x[0], b = x[1];
    return sq(1.5 - a + a * b) + sq(2.25 - a + a * b * b) + sq(2.625 - a + a * b * b * b);
}

double branin(const double* x) {
    const double b = 5.1 / (4.0 * pi * pi), c = 5.0 / pi, t = 1.0 / (8.0 * pi);
    return sq(x[1] - b * x[0] * x[0] + c * x[0] - 6.0) + 10.0 * (1.0 - t) * cos(x[0]) + 10.0;
}

double brent(const double* x) {
    return sq(x[0] + 10.0) + sq(x[1] + 10.0) + exp(-x[0] * x[0] - x[1] * x[1]);
}

double bukin6(const double* x) {
    return 100.0 * std::sqrt(std::fabs(x[1] - 0.01 * x[0] * x[0])) + 0.01 * std::fabs(x[0] + 10.0);
}

double easom(const double* x) {
    return -cos(x[0]) * cos(x[1]) * exp(-sq(x[0] - pi) - sq(x[1] - pi));
}

double goldstein_price(const double* x) {
    const double a = x[0], b = x[1];
    const double t1 =
        1.0 + sq(a + b + 1.0) * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    const double t2 = 30.0 + sq(2.0 * a - 3.0 * b) *
                                 (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    return t1 * t2;
}

constexpr std::array<double, 4> hartmann_alpha{1.0, 1.2, 3.0, 3.2};

double hartmann3(const double* x) {
    static constexpr double A[4][3] = {{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}};
    static constexpr double P[4][3] = {{3689, 1170, 2673},
                                       {4699, 4387, 7470},
                                       {1091, 8732, 5547},
                                       {381, 5743, 8828}};
    double f = 0.0;
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j) s += A[i][j] * sq(x[j] - 1e-4 * P[i][j]);
        f -= hartmann_alpha[i] * exp(-s);
    }
    return f;
}

double hartmann6(const double* x) {
    static constexpr double A[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                       {0.05, 10, 17, 0.1, 8, 14},
                                       {3, 3.5, 1.7, 10, 17, 8},
                                       {17, 8, 0.05, 10, 0.1, 14}};
    static constexpr double P[4][6] = {{1312, 1696, 5569, 124, 8283, 5886},
                                       {2329, 4135, 8307, 3736, 1004, 9991},
                                       {2348, 1451, 3522, 2883, 3047, 6650},
                                       {4047, 8828, 8732, 5743, 1091, 381}};
    double f = 0.0;
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 6; ++j) s += A[i][j] * sq(x[j] - 1e-4 * P[i][j]);
        f -= hartmann_alpha[i] * exp(-s);
    }
    return f;
}

double levy4(const double* x) {
    double w[4];
    for (int i = 0; i < 4; ++i) w[i] = 1.0 + (x[i] - 1.0) / 4.0;
    double f = sq(sin(pi * w[0]));
    for (int i = 0; i < 3; ++i) f += sq(w[i] - 1.0) * (1.0 + 10.0 * sq(sin(pi * w[i] + 1.0)));
    return f + sq(w[3] - 1.0) * (1.0 + sq(sin(2.0 * pi * w[3])));
}

// sum_i ( sum_j (j + beta) (x_j^i - j^-i) )^2, zero at x_j = 1/j.
double perm4(const double* x) {
    constexpr double beta = 0.5;
    double f = 0.0;
    for (int i = 1; i <= 4; ++i) {
        double s = 0.0;
        for (int j = 1; j <= 4; ++j) s += (j + beta) * (std::pow(x[j - 1], i) - std::pow(j, -i));
        f += s * s;
    }
    return f;
}

double rosenbrock3(const double* x) {
    double f = 0.0;
    for (int i = 0; i < 2; ++i) f += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(x[i] - 1.0);
    return f;
}

template <int M>
double shekel(const double* x) {
    static constexpr double beta[10] = {1, 2, 2, 4, 4, 6, 3, 7, 5, 5};
    static constexpr double C[4][10] = {{4, 1, 8, 6, 3, 2, 5, 8, 6, 7},
                                        {4, 1, 8, 6, 7, 9, 3, 1, 2, 3.6},
                                        {4, 1, 8, 6, 3, 2, 5, 8, 6, 7},
                                        {4, 1, 8, 6, 7, 9, 3, 1, 2, 3.6}};
    double f = 0.0;
    for (int i = 0; i < M; ++i) {
        double s = 0.1 * beta[i];
        for (int j = 0; j < 4; ++j) s += sq(x[j] - C[j][i]);
        f -= 1.0 / s;
    }
    return f;
}

double shubert(const double* x) {
    double a = 0.0, b = 0.0;
    for (int i = 1; i <= 5; ++i) {
        a += i * cos((i + 1) * x[0] + i);
        b += i * cos((i + 1) * x[1] + i);
    }
    return a * b;
}

double six_hump_camel(const double* x) {
    const double a = x[0], b = x[1];
    return (4.0 - 2.1 * a * a + a * a * a * a / 3.0) * a * a + a * b + (-4.0 + 4.0 * b * b) * b * b;
}

double styblinski_tang4(const double* x) {
    double f = 0.0;
    for (int i = 0; i < 4; ++i) f += x[i] * x[i] * x[i] * x[i] - 16.0 * x[i] * x[i] + 5.0 * x[i];
    return 0.5 * f;
}

double trid5(const double* x) {
    double f = 0.0;
    for (int i = 0; i < 5; ++i) f += sq(x[i] - 1.0);
    for (int i = 1; i < 5; ++i) f -= x[i] * x[i - 1];
    return f;
}

double zettl(const double* x) {
    return sq(x[0] * x[0] + x[1] * x[1] - 2.0 * x[0]) + 0.25 * x[0];
}

BaseFunction make(std::string name, std::vector<Interval> dom, double f_star,
                  std::vector<double> x_star, int count, double (*fn)(const double*),
                  SolverFlags flags = {}) {
    BaseFunction b;
    b.name = std::move(name);
    b.d_e = static_cast<int>(dom.size());
    b.domain = std::move(dom);
    b.f_star = f_star;
    b.x_star = Eigen::Map<const Vector>(x_star.data(), static_cast<Eigen::Index>(x_star.size()));
    b.minimizer_count = count;
    b.flags = flags;
    b.eval = fn;
    return b;
}

std::vector<Interval> cube(int d, double lo, double hi) { return std::vector<Interval>(d, {lo, hi}); }

std::vector<BaseFunction> build() {
    const SolverFlags no_baron{true, false};
    const SolverFlags no_knitro{false, true};
    const double st = -2.903534027771178;
    std::vector<BaseFunction> c;
    c.push_back(make("beale", cube(2, -4.5, 4.5), 0.0, {3.0, 0.5}, 1, beale));
    c.push_back(make("branin", {{-5, 10}, {0, 15}}, 0.397887, {pi, 2.275}, 3, branin, no_baron));
    c.push_back(make("brent", cube(2, -10, 10), 0.0, {-10.0, -10.0}, 1, brent));
    c.push_back(make("bukin6", {{-15, -5}, {-3, 3}}, 0.0, {-10.0, 1.0}, 1, bukin6, no_knitro));
    c.push_back(make("easom", cube(2, -100, 100), -1.0, {pi, pi}, 1, easom, no_baron));
    c.push_back(make("goldstein_price", cube(2, -2, 2), 3.0, {0.0, -1.0}, 1, goldstein_price));
    c.push_back(make("hartmann3", cube(3, 0, 1), -3.86278,
                     {0.11458886908541062, 0.5556488928322367, 0.8525469854282611}, 1, hartmann3));
    c.push_back(make("hartmann6", cube(6, 0, 1), -3.32237,
                     {0.20168951209480995, 0.15001069277685197, 0.476873971833793,
                      0.275332431065528, 0.3116516179851896, 0.657300535855056},
                     1, hartmann6));
    c.push_back(make("levy", cube(4, -10, 10), 0.0, {1, 1, 1, 1}, 1, levy4, no_baron));
    c.push_back(make("perm", cube(4, -4, 4), 0.0, {1.0, 0.5, 1.0 / 3.0, 0.25}, 1, perm4));
    c.push_back(make("rosenbrock", cube(3, -5, 10), 0.0, {1, 1, 1}, 1, rosenbrock3));
    c.push_back(make("shekel5", cube(4, 0, 10), -10.1532,
                     {4.000037152376549, 4.000133278657566, 4.000037151057555, 4.000133277090425}, 1,
                     shekel<5>));
    c.push_back(make("shekel7", cube(4, 0, 10), -10.4029,
                     {4.000572818167059, 3.9996062070672305, 4.000572821117356, 3.999606210400273},
                     1, shekel<7>));
    c.push_back(make("shekel10", cube(4, 0, 10), -10.5364,
                     {4.000746867869747, 3.9995094850576276, 4.000746868809279, 3.999509480017675},
                     1, shekel<10>));
    c.push_back(make("shubert", cube(2, -10, 10), -186.7309, {-7.083506407309416, 4.858056878837127},
                     18, shubert, no_baron));
    c.push_back(make("six_hump_camel", {{-3, 3}, {-2, 2}}, -1.0316,
                     {0.08984201617713354, -0.7126564063539513}, 2, six_hump_camel));
    c.push_back(make("styblinski_tang", cube(4, -5, 5), -156.664, {st, st, st, st}, 1,
                     styblinski_tang4));
    c.push_back(make("trid", cube(5, -25, 25), -30.0, {5, 8, 9, 8, 5}, 1, trid5));
    c.push_back(make("zettl", cube(2, -5, 5), -0.00379, {-0.02989598504844889, 0.0}, 1, zettl));
    return c;
}

}  // namespace

const std::vector<BaseFunction>& catalog() {
    static const std::vector<BaseFunction> c = build();
    return c;
}

const BaseFunction& find_base(std::string_view name) {
    for (const auto& b : catalog())
        if (b.name == name) return b;
    throw InvalidArgument("unknown problem: " + std::string(name));
}

}  // namespace xrego
