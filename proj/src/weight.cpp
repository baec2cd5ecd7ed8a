#include "amalgam/weight.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace amalgam {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Weight Weight::coordpow(double a) {
    Weight w;
    w.kind_ = Kind::coordpow;
    w.a_ = a;
    return w;
}

Weight Weight::blockpow(double a) {
    Weight w;
    w.kind_ = Kind::blockpow;
    w.a_ = a;
    return w;
}

Weight Weight::literal(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("Weight::literal: empty weight");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Weight::literal: entries must be strictly positive");
    Weight w;
    w.kind_ = Kind::literal;
    w.values_ = std::move(values);
    return w;
}

Weight Weight::young_ratio(YoungFn m, YoungFn n) {
    Weight w;
    w.kind_ = Kind::yratio;
    w.yf1_ = std::make_shared<YoungFn>(std::move(m));
    w.yf2_ = std::make_shared<YoungFn>(std::move(n));
    return w;
}

Weight Weight::q_ratio(QuasiConcaveFn phi, QuasiConcaveFn psi) {
    Weight w;
    w.kind_ = Kind::qratio;
    w.qf1_ = std::make_shared<QuasiConcaveFn>(std::move(phi));
    w.qf2_ = std::make_shared<QuasiConcaveFn>(std::move(psi));
    return w;
}

Weight Weight::q_delta_ratio(QuasiConcaveFn phi, QuasiConcaveFn psi) {
    Weight w;
    w.kind_ = Kind::qdratio;
    w.qf1_ = std::make_shared<QuasiConcaveFn>(std::move(phi));
    w.qf2_ = std::make_shared<QuasiConcaveFn>(std::move(psi));
    return w;
}

Weight Weight::blockconst(Weight inner) {
    Weight w;
    w.kind_ = Kind::blockconst;
    w.w1_ = std::make_shared<Weight>(std::move(inner));
    return w;
}

Weight Weight::times(const Weight& other) const {
    if (kind_ == Kind::coordpow && other.kind_ == Kind::coordpow) return coordpow(a_ + other.a_);
    if (kind_ == Kind::blockpow && other.kind_ == Kind::blockpow) return blockpow(a_ + other.a_);
    if (is_trivial()) return other;
    if (other.is_trivial()) return *this;
    Weight w;
    w.kind_ = Kind::product;
    w.w1_ = std::make_shared<Weight>(*this);
    w.w2_ = std::make_shared<Weight>(other);
    return w;
}

Weight Weight::pow(double e) const {
    if (e == 1.0) return *this;
    if (kind_ == Kind::coordpow) return coordpow(a_ * e);
    if (kind_ == Kind::blockpow) return blockpow(a_ * e);
    if (kind_ == Kind::power) {
        Weight w;
        w.kind_ = Kind::power;
        w.a_ = a_ * e;
        w.w1_ = w1_;
        return w;
    }
    Weight w;
    w.kind_ = Kind::power;
    w.a_ = e;
    w.w1_ = std::make_shared<Weight>(*this);
    return w;
}

double Weight::at(std::size_t i) const {
    double n = static_cast<double>(i + 1);
    switch (kind_) {
        case Kind::coordpow:
            return std::pow(n, a_);
        case Kind::blockpow:
            return std::exp2(a_ * static_cast<double>(i));
        case Kind::literal:
            if (i >= values_.size())
                throw std::out_of_range("Weight::literal: index beyond weight length");
            return values_[i];
        case Kind::yratio: {
            double mv = yf1_->inverse(1.0 / n);
            double nv = yf2_->inverse(1.0 / n);
            if (!(nv > 0.0) || !std::isfinite(mv / nv))
                throw std::domain_error("Weight::yratio: degenerate inverse ratio");
            return mv / nv;
        }
        case Kind::qratio: {
            double denom = (*qf2_)(n);
            if (!(denom > 0.0))
                throw std::domain_error("Weight::qratio: zero denominator");
            return (*qf1_)(n) / denom;
        }
        case Kind::qdratio: {
            double denom = (*qf2_)(n);
            if (!(denom > 0.0))
                throw std::domain_error("Weight::qdratio: zero denominator");
            return ((*qf1_)(n + 1.0) - (*qf1_)(n)) / denom;
        }
        case Kind::blockconst: {
            std::size_t j = 0, k = i + 1;
            while (k >>= 1) ++j;
            return w1_->at(j);
        }
        case Kind::product:
            return w1_->at(i) * w2_->at(i);
        case Kind::power:
            return std::pow(w1_->at(i), a_);
    }
    return 1.0;
}

bool Weight::equals(const Weight& other) const { return print() == other.print(); }

bool Weight::is_trivial() const {
    return (kind_ == Kind::coordpow || kind_ == Kind::blockpow) && a_ == 0.0;
}

std::string Weight::print() const {
    switch (kind_) {
        case Kind::coordpow:
            return "coordpow(" + fmt(a_) + ")";
        case Kind::blockpow:
            return "blockpow(" + fmt(a_) + ")";
        case Kind::literal: {
            std::string s = "lit([";
            for (std::size_t i = 0; i < values_.size(); ++i) {
                if (i) s += ",";
                s += fmt(values_[i]);
            }
            return s + "])";
        }
        case Kind::yratio:
            return "yratio(" + yf1_->print() + "," + yf2_->print() + ")";
        case Kind::qratio:
            return "qratio(" + qf1_->print() + "," + qf2_->print() + ")";
        case Kind::qdratio:
            return "qdratio(" + qf1_->print() + "," + qf2_->print() + ")";
        case Kind::blockconst:
            return "blockconst(" + w1_->print() + ")";
        case Kind::product:
            return "wprod(" + w1_->print() + "," + w2_->print() + ")";
        case Kind::power:
            return "wpow(" + w1_->print() + "," + fmt(a_) + ")";
    }
    return "";
}

}  // namespace amalgam
