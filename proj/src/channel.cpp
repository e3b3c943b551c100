#include "fiwi/channel.hpp"

#include <cmath>

namespace fiwi {

std::pair<double, double> blockage_probability(double r, double beta) {
    if (r < 0.0) throw NegativeDistance("blockage_probability: r < 0");
    const double p_los = std::exp(-beta * r);
    return {p_los, 1.0 - p_los};
}

ChannelRealization realize_channel(const Deployment& dep, const ValidatedConfig& cfg,
                                   RandomStream& rng) {
    ChannelRealization ch;
    ch.links.resize(dep.assoc.size());
    for (size_t n = 0; n < dep.assoc.size(); ++n) {
        ch.links[n].reserve(dep.assoc[n].size());
        for (size_t k = 0; k < dep.assoc[n].size(); ++k) {
            const double r = dep.dist[n][k];
            Link link;
            link.state = rng.bernoulli(std::exp(-cfg->blockage_beta * r)) ? LinkState::Los
                                                                          : LinkState::Nlos;
            const bool los = link.state == LinkState::Los;
            link.fading = rng.gamma_unit_mean(los ? cfg->nakagami_los : cfg->nakagami_nlos);
            const double alpha = los ? cfg->pathloss_los : cfg->pathloss_nlos;
            link.gain = std::pow(r, -alpha) * link.fading;
            ch.links[n].push_back(link);
        }
    }
    return ch;
}

LinkRate link_rate(double power, double gain, const ValidatedConfig& cfg) {
    if (power < 0.0) throw NegativePower("link_rate: power < 0");
    LinkRate out;
    out.snr = power * gain * cfg->beam_gain / cfg->noise_power;
    out.rate = cfg->subchannel_bw * std::log2(1.0 + out.snr);
    return out;
}

}  // namespace fiwi
