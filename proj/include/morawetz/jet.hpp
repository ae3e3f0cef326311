#pragma once

namespace morawetz {

/// Value and partial derivatives through second order of a field at one space-time point.
struct Jet2 {
    double v = 0.0;
    double v_x = 0.0;
    double v_t = 0.0;
    double v_xx = 0.0;
    double v_tt = 0.0;
    double v_xt = 0.0;

    Jet2& operator+=(const Jet2& o) noexcept
    {
        v += o.v; v_x += o.v_x; v_t += o.v_t;
        v_xx += o.v_xx; v_tt += o.v_tt; v_xt += o.v_xt;
        return *this;
    }
    Jet2& operator-=(const Jet2& o) noexcept
    {
        v -= o.v; v_x -= o.v_x; v_t -= o.v_t;
        v_xx -= o.v_xx; v_tt -= o.v_tt; v_xt -= o.v_xt;
        return *this;
    }
    Jet2& operator*=(double s) noexcept
    {
        v *= s; v_x *= s; v_t *= s;
        v_xx *= s; v_tt *= s; v_xt *= s;
        return *this;
    }
    friend Jet2 operator+(Jet2 a, const Jet2& b) noexcept { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) noexcept { return a -= b; }
    friend Jet2 operator*(double s, Jet2 a) noexcept { return a *= s; }
};

} // namespace morawetz
