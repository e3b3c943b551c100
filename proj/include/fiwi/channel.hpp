#pragma once

#include <utility>
#include <vector>

#include "fiwi/config.hpp"
#include "fiwi/geometry.hpp"
#include "fiwi/rng.hpp"

namespace fiwi {

enum class LinkState { Los, Nlos };

struct Link {
    LinkState state = LinkState::Los;
    double fading = 1.0;  // h, unit-mean Gamma
    double gain = 0.0;    // g = r^{-alpha} * h
};

// Per-link channel state, aligned with Deployment::assoc.
struct ChannelRealization {
    std::vector<std::vector<Link>> links;

    std::vector<double> gains(int ap) const {
        std::vector<double> g;
        g.reserve(links[ap].size());
        for (const auto& l : links[ap]) g.push_back(l.gain);
        return g;
    }
};

// Two-state blockage: (p_los, p_nlos) = (e^{-beta r}, 1 - e^{-beta r}).
std::pair<double, double> blockage_probability(double r, double beta);

// Draws state ~ Bernoulli(p_los(r)) and fading ~ Gamma(N_i, 1/N_i)
// (unit mean), then g = r^{-alpha_i} h.
ChannelRealization realize_channel(const Deployment& dep, const ValidatedConfig& cfg,
                                   RandomStream& rng);

struct LinkRate {
    double snr = 0.0;   // P g G / sigma^2
    double rate = 0.0;  // B log2(1 + snr), bit/s
};

LinkRate link_rate(double power, double gain, const ValidatedConfig& cfg);

}  // namespace fiwi
