#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spectra {

// Finite string of continued-fraction digits in [1, N]. The empty word is
// the root cylinder [0, 1].
class Word {
public:
    Word() : bound_(1) {}
    explicit Word(std::vector<int> digits, int alphabet_bound = 0)
        : digits_(std::move(digits)), bound_(alphabet_bound) {
        if (bound_ == 0)
            for (int d : digits_) bound_ = std::max(bound_, d);
        if (bound_ < 1) bound_ = 1;
        for (int d : digits_)
            if (d < 1 || d > bound_)
                throw std::invalid_argument("Word: digit " + std::to_string(d) +
                                            " outside [1, " + std::to_string(bound_) + "]");
    }

    static Word parse(const std::string& text, int alphabet_bound = 0);

    const std::vector<int>& digits() const { return digits_; }
    int alphabet_bound() const { return bound_; }
    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    int operator[](std::size_t i) const { return digits_[i]; }

    Word reversed() const {
        return Word(std::vector<int>(digits_.rbegin(), digits_.rend()), bound_);
    }
    Word subword(std::size_t pos, std::size_t len) const {
        return Word(std::vector<int>(digits_.begin() + pos, digits_.begin() + pos + len), bound_);
    }
    Word appended(int digit) const {
        std::vector<int> d = digits_;
        d.push_back(digit);
        return Word(std::move(d), std::max(bound_, digit));
    }
    friend Word concat(const Word& a, const Word& b) {
        std::vector<int> d = a.digits_;
        d.insert(d.end(), b.digits_.begin(), b.digits_.end());
        return Word(std::move(d), std::max(a.bound_, b.bound_));
    }

    bool is_prefix_of(const Word& w) const {
        if (size() > w.size()) return false;
        for (std::size_t i = 0; i < size(); ++i)
            if (digits_[i] != w.digits_[i]) return false;
        return true;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(digits_[i]);
        }
        return out;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.digits_ == b.digits_; }
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        return a.digits_ <=> b.digits_;
    }

private:
    std::vector<int> digits_;
    int bound_;
};

inline Word Word::parse(const std::string& text, int alphabet_bound) {
    std::vector<int> digits;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ',' || text[i] == ' ')) ++i;
        if (i >= text.size()) break;
        if (!isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("Word::parse: unexpected character at position " +
                                        std::to_string(i) + " in '" + text + "'");
        int v = 0;
        while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
            v = v * 10 + (text[i++] - '0');
        digits.push_back(v);
    }
    return Word(std::move(digits), alphabet_bound);
}

}  // namespace spectra
