/*
 * Copyright 2026 The NeuroPod Simulator Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "neuropod/live/service.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "neuropod/error.hpp"
#include "neuropod/live/protocol.hpp"
#include "neuropod/scenario/monitor.hpp"
#include "neuropod/scenario/pipeline.hpp"

namespace neuropod::live {
namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using Clock = std::chrono::steady_clock;
using Body = std::shared_ptr<const std::string>;

constexpr std::size_t kMaxLineBytes = 1 << 16;
constexpr auto kSniffTimeout = std::chrono::milliseconds(250);

class Hub;

class Session : public std::enable_shared_from_this<Session>
{
public:
    Session(Hub &hub, std::uint64_t id) : hub_(hub), id_(id) {}
    virtual ~Session() = default;

    virtual void start() = 0;
    virtual void close() = 0;

    void deliver(const std::string &body);
    [[nodiscard]] std::uint64_t id() const { return id_; }

protected:
    void on_line(std::string_view line);
    void finished();
    virtual void write_next() = 0;
    virtual std::string frame(std::string msg) { return msg; }

    Hub &hub_;
    std::uint64_t id_;
    std::deque<std::string> out_;
    bool writing_ = false;
    bool closed_ = false;
    std::uint64_t seq_ = 0;
};

/// IO-thread-only registry of connections.
class Hub
{
public:
    using CommandSink = std::function<void(std::uint64_t, std::optional<Command>)>;

    Hub(std::size_t max_backlog, CommandSink sink, const std::atomic<Tick> &tick)
        : max_backlog_(max_backlog), sink_(std::move(sink)), tick_(tick)
    {
    }

    std::uint64_t next_id() { return ++last_id_; }
    [[nodiscard]] std::size_t max_backlog() const { return max_backlog_; }
    [[nodiscard]] bool stopping() const { return stopping_; }
    [[nodiscard]] std::size_t size() const { return sessions_.size(); }

    void add(const std::shared_ptr<Session> &s) { sessions_[s->id()] = s; }
    /// Asks the simulation thread for a snapshot, which subscribes the client.
    void ready(std::uint64_t id) { sink_(id, std::nullopt); }
    void remove(std::uint64_t id)
    {
        sessions_.erase(id);
        subscribed_.erase(id);
    }

    void complete_join(std::uint64_t id, const Body &snapshot)
    {
        auto it = sessions_.find(id);
        if (it == sessions_.end())
        {
            return;
        }
        subscribed_.insert(id);
        it->second->deliver(*snapshot);
    }

    void broadcast(const Body &body)
    {
        // Copy: deliver() may drop a slow client and mutate the set.
        const std::vector<std::uint64_t> ids(subscribed_.begin(), subscribed_.end());
        for (const auto id : ids)
        {
            if (auto it = sessions_.find(id); it != sessions_.end())
            {
                it->second->deliver(*body);
            }
        }
    }

    void on_line(Session &s, std::string_view line)
    {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        {
            line.remove_suffix(1);
        }
        if (line.empty())
        {
            return;
        }
        try
        {
            sink_(s.id(), parse_command(line));
        }
        catch (const ProtocolError &e)
        {
            s.deliver(error_event(tick_.load(), e.what()).dump());
        }
    }

    void shutdown()
    {
        stopping_ = true;
        const auto all = sessions_;
        for (const auto &[id, s] : all)
        {
            s->close();
        }
        sessions_.clear();
        subscribed_.clear();
    }

private:
    std::size_t max_backlog_;
    CommandSink sink_;
    const std::atomic<Tick> &tick_;
    std::map<std::uint64_t, std::shared_ptr<Session>> sessions_;
    std::set<std::uint64_t> subscribed_;
    std::uint64_t last_id_ = 0;
    bool stopping_ = false;
};

void Session::deliver(const std::string &body)
{
    if (closed_)
    {
        return;
    }
    if (out_.size() >= hub_.max_backlog())
    {
        close();
        return;
    }
    out_.push_back(frame(with_seq(seq_++, body)));
    if (!writing_)
    {
        writing_ = true;
        write_next();
    }
}

void Session::on_line(std::string_view line)
{
    hub_.on_line(*this, line);
}

void Session::finished()
{
    closed_ = true;
    hub_.remove(id_);
}

class LineSession final : public Session
{
public:
    LineSession(Hub &hub, std::uint64_t id, tcp::socket sock, std::string initial)
        : Session(hub, id), sock_(std::move(sock)), in_(std::move(initial))
    {
    }

    void start() override
    {
        hub_.ready(id_);
        read();
    }

    void close() override
    {
        boost::system::error_code ec;
        sock_.shutdown(tcp::socket::shutdown_both, ec);
        sock_.close(ec);
        finished();
    }

private:
    std::string frame(std::string msg) override
    {
        msg += '\n';
        return msg;
    }

    void read()
    {
        asio::async_read_until(sock_, asio::dynamic_buffer(in_, kMaxLineBytes), '\n',
                [self = shared_from_this(), this](boost::system::error_code ec, std::size_t n) {
                    if (closed_)
                    {
                        return;
                    }
                    if (ec)
                    {
                        if (ec == asio::error::not_found)
                        {
                            deliver(error_event(0, "line too long").dump());
                        }
                        close();
                        return;
                    }
                    const std::string line = in_.substr(0, n - 1);
                    in_.erase(0, n);
                    on_line(line);
                    read();
                });
    }

    void write_next() override
    {
        asio::async_write(sock_, asio::buffer(out_.front()),
                [self = shared_from_this(), this](boost::system::error_code ec, std::size_t) {
                    if (closed_)
                    {
                        return;
                    }
                    out_.pop_front();
                    if (ec)
                    {
                        close();
                        return;
                    }
                    if (out_.empty())
                    {
                        writing_ = false;
                    }
                    else
                    {
                        write_next();
                    }
                });
    }

    tcp::socket sock_;
    std::string in_;
};

class WsSession final : public Session
{
public:
    WsSession(Hub &hub, std::uint64_t id, tcp::socket sock, beast::flat_buffer initial)
        : Session(hub, id), ws_(std::move(sock)), buf_(std::move(initial))
    {
    }

    void start() override
    {
        http::async_read(ws_.next_layer(), buf_, req_,
                [self = shared_from_this(), this](boost::system::error_code ec, std::size_t) {
                    if (closed_)
                    {
                        return;
                    }
                    if (ec || !websocket::is_upgrade(req_))
                    {
                        close();
                        return;
                    }
                    ws_.async_accept(req_, [self, this](boost::system::error_code ec2) {
                        if (closed_)
                        {
                            return;
                        }
                        if (ec2)
                        {
                            close();
                            return;
                        }
                        ws_.text(true);
                        open_ = true;
                        hub_.ready(id_);
                        if (!out_.empty() && !writing_)
                        {
                            writing_ = true;
                            write_next();
                        }
                        read();
                    });
                });
    }

    void close() override
    {
        boost::system::error_code ec;
        ws_.next_layer().shutdown(tcp::socket::shutdown_both, ec);
        ws_.next_layer().close(ec);
        finished();
    }

private:
    void read()
    {
        ws_.async_read(buf_, [self = shared_from_this(), this](boost::system::error_code ec,
                                     std::size_t) {
            if (closed_)
            {
                return;
            }
            if (ec)
            {
                close();
                return;
            }
            const std::string msg = beast::buffers_to_string(buf_.data());
            buf_.consume(buf_.size());
            on_line(msg);
            read();
        });
    }

    void write_next() override
    {
        if (!open_)
        {
            writing_ = false;
            return;
        }
        ws_.async_write(asio::buffer(out_.front()),
                [self = shared_from_this(), this](boost::system::error_code ec, std::size_t) {
                    if (closed_)
                    {
                        return;
                    }
                    out_.pop_front();
                    if (ec)
                    {
                        close();
                        return;
                    }
                    if (out_.empty())
                    {
                        writing_ = false;
                    }
                    else
                    {
                        write_next();
                    }
                });
    }

    websocket::stream<tcp::socket> ws_;
    beast::flat_buffer buf_;
    http::request<http::string_body> req_;
    bool open_ = false;
};

/// Waits briefly for the first bytes: "GET " means a WebSocket upgrade,
/// anything else (or silence) means NDJSON.
class Sniffer : public std::enable_shared_from_this<Sniffer>
{
public:
    Sniffer(Hub &hub, tcp::socket sock)
        : hub_(hub), sock_(std::move(sock)), timer_(sock_.get_executor())
    {
    }

    void start()
    {
        timer_.expires_after(kSniffTimeout);
        timer_.async_wait([self = shared_from_this()](boost::system::error_code ec) {
            if (!ec && !self->decided_)
            {
                self->timed_out_ = true;
                boost::system::error_code ignored;
                self->sock_.cancel(ignored);
            }
        });
        read();
    }

private:
    void read()
    {
        sock_.async_read_some(buf_.prepare(512),
                [self = shared_from_this()](boost::system::error_code ec, std::size_t n) {
                    self->buf_.commit(n);
                    if (ec && !(ec == asio::error::operation_aborted && self->timed_out_))
                    {
                        self->timer_.cancel();
                        return;
                    }
                    const auto data = beast::buffers_to_string(self->buf_.data());
                    if (self->timed_out_ || data.size() >= 4 || data.find('\n') != std::string::npos)
                    {
                        self->timer_.cancel();
                        self->decide(data);
                    }
                    else
                    {
                        self->read();
                    }
                });
    }

    void decide(const std::string &data)
    {
        if (decided_)
        {
            return;
        }
        decided_ = true;
        if (hub_.stopping())
        {
            return;
        }
        std::shared_ptr<Session> s;
        if (data.rfind("GET ", 0) == 0)
        {
            s = std::make_shared<WsSession>(hub_, hub_.next_id(), std::move(sock_), std::move(buf_));
        }
        else
        {
            s = std::make_shared<LineSession>(hub_, hub_.next_id(), std::move(sock_), data);
        }
        hub_.add(s);
        s->start();
    }

    Hub &hub_;
    tcp::socket sock_;
    asio::steady_timer timer_;
    beast::flat_buffer buf_;
    bool timed_out_ = false;
    bool decided_ = false;
};

} // namespace

struct LiveService::Impl
{
    struct Pending
    {
        std::uint64_t origin = 0;
        std::optional<Command> command; // nullopt: join request
        Tick received_tick = 0;
    };

    explicit Impl(ServiceOptions o)
        : opts(std::move(o)),
          acceptor(io),
          hub(opts.max_client_backlog,
                  [this](std::uint64_t origin, std::optional<Command> c) {
                      enqueue(origin, std::move(c));
                  },
                  tick_now)
    {
    }

    void enqueue(std::uint64_t origin, std::optional<Command> c)
    {
        std::lock_guard lk(mu);
        queue.push_back({origin, std::move(c), tick_now.load()});
    }

    void accept()
    {
        acceptor.async_accept([this](boost::system::error_code ec, tcp::socket sock) {
            if (ec)
            {
                return;
            }
            std::make_shared<Sniffer>(hub, std::move(sock))->start();
            clients.store(hub.size());
            accept();
        });
    }

    void post_broadcast(const nlohmann::json &j)
    {
        auto body = std::make_shared<const std::string>(j.dump());
        asio::post(io, [this, body] {
            hub.broadcast(body);
            clients.store(hub.size());
        });
    }

    LiveStatus status(const scenario::Pipeline &p, const scenario::GaitMonitor &m,
            const std::optional<cpg::ConvergenceResult> &conv) const
    {
        LiveStatus s;
        s.tick = p.tick();
        s.gait = m.current();
        s.commanded_gait = p.commanded_gait();
        s.selector = p.selector().value;
        s.time_scale_factor = p.time_scale();
        s.pose = hexapod::pose_to_json(p.world());
        s.pwm = controller::bank_to_json(p.pwm());
        s.uplink = p.uplink().health();
        s.downlink = p.downlink().health();
        s.decoder = p.decoder().to_json();
        s.convergence = conv;
        s.drift_ticks = drift.load();
        s.lateness_ms = lateness.load();
        return s;
    }

    void simulate()
    {
        scenario::Pipeline pipe(opts.system, opts.time_scale_factor);
        scenario::GaitMonitor monitor(pipe.config().cpg.signatures);
        std::optional<cpg::ConvergenceResult> conv;
        std::uint64_t event_id = 0;
        double period_ms = pipe.time_scale();
        auto anchor = Clock::now();
        Tick anchor_tick = 0;
        auto last_pose = Clock::time_point::min();
        const auto pose_gap = std::chrono::duration<double>(1.0 / opts.pose_fps);

        for (;;)
        {
            const Tick t = pipe.tick();
            const auto deadline = anchor + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double, std::milli>(
                            static_cast<double>(t - anchor_tick) * period_ms));
            std::deque<Pending> batch;
            {
                std::unique_lock lk(mu);
                cv.wait_until(lk, deadline, [this] { return stopping; });
                if (stopping)
                {
                    return;
                }
                batch.swap(queue);
            }
            const double late_ms =
                    std::chrono::duration<double, std::milli>(Clock::now() - deadline).count();
            lateness.store(late_ms);
            drift.store(late_ms / period_ms);
            if (late_ms > max_lateness.load())
            {
                max_lateness.store(late_ms);
            }

            for (const auto &p : batch)
            {
                if (p.command)
                {
                    continue;
                }
                auto body = std::make_shared<const std::string>(
                        snapshot_event(status(pipe, monitor, conv)).dump());
                asio::post(io, [this, id = p.origin, body] { hub.complete_join(id, body); });
            }
            for (const auto &p : batch)
            {
                if (!p.command)
                {
                    continue;
                }
                const auto &c = *p.command;
                switch (c.type)
                {
                case CommandType::SetGait:
                    pipe.set_gait(*cpg::gait_from_index(c.gait));
                    break;
                case CommandType::ButtonUp:
                    pipe.press_up();
                    break;
                case CommandType::ButtonDown:
                    pipe.press_down();
                    break;
                case CommandType::Reset:
                    pipe.reset();
                    monitor.clear();
                    conv.reset();
                    break;
                case CommandType::SetScale:
                    pipe.set_time_scale(c.factor);
                    anchor = deadline;
                    anchor_tick = t;
                    period_ms = c.factor;
                    break;
                }
                post_broadcast(ack_event(++event_id, c, p.received_tick, t, p.origin));
            }

            const auto r = pipe.step();
            tick_now.store(pipe.tick());
            ticks.store(pipe.tick());

            if (r.gait_sent)
            {
                monitor.gait_changed(t, *r.gait_sent);
            }
            std::vector<cpg::MotorEvent> events;
            for (const auto &e : r.motor_aer)
            {
                const bool fw = e.addr < cpg::kServoCount;
                events.push_back({e.tick, fw ? e.addr : e.addr - cpg::kServoCount,
                        fw ? cpg::MotorAction::Fw : cpg::MotorAction::Bw});
            }
            monitor.observe(t, events);

            if (opts.stream_spikes && !r.spikes.empty())
            {
                post_broadcast(spike_event(++event_id, t, r.spikes));
            }
            if (!r.motor_aer.empty())
            {
                post_broadcast(motor_event(++event_id, t, r.motor_aer));
            }
            const auto now = Clock::now();
            if (last_pose == Clock::time_point::min() || now - last_pose >= pose_gap)
            {
                last_pose = now;
                post_broadcast(pose_event(++event_id, hexapod::pose_to_json(pipe.world())));
            }
            const bool fresh = monitor.take_new_result();
            if (fresh)
            {
                conv = monitor.last_result();
            }
            if (fresh || pipe.tick() % opts.metrics_every_ticks == 0)
            {
                post_broadcast(metrics_event(++event_id, status(pipe, monitor, conv)));
            }
        }
    }

    ServiceOptions opts;
    asio::io_context io;
    tcp::acceptor acceptor;
    std::atomic<Tick> tick_now{0};
    Hub hub;
    std::mutex mu;
    std::condition_variable cv;
    std::deque<Pending> queue;
    bool stopping = false;
    std::atomic<std::int64_t> ticks{0};
    std::atomic<double> drift{0.0};
    std::atomic<double> lateness{0.0};
    std::atomic<double> max_lateness{0.0};
    std::atomic<std::size_t> clients{0};
    std::uint16_t bound_port = 0;
    std::thread io_thread;
    std::thread sim_thread;
    bool started = false;
};

LiveService::LiveService(ServiceOptions options)
{
    if (const char *env = std::getenv(kBindAddressEnv); env != nullptr && *env != '\0')
    {
        options.bind_address = env;
    }
    if (!(options.time_scale_factor >= 1.0) || !(options.pose_fps > 0) ||
            options.metrics_every_ticks < 1)
    {
        throw ConfigError("time_scale_factor >= 1, pose_fps > 0 and metrics_every_ticks >= 1");
    }
    options.system.validate();
    impl_ = std::make_unique<Impl>(std::move(options));
}

LiveService::~LiveService()
{
    stop();
}

void LiveService::start()
{
    auto &d = *impl_;
    if (d.started)
    {
        return;
    }
    try
    {
        const tcp::endpoint ep(asio::ip::make_address(d.opts.bind_address), d.opts.port);
        d.acceptor.open(ep.protocol());
        d.acceptor.set_option(tcp::acceptor::reuse_address(true));
        d.acceptor.bind(ep);
        d.acceptor.listen();
        d.bound_port = d.acceptor.local_endpoint().port();
    }
    catch (const boost::system::system_error &e)
    {
        throw IoError("cannot bind " + d.opts.bind_address + ":" + std::to_string(d.opts.port) +
                ": " + e.what());
    }
    d.started = true;
    d.accept();
    d.io_thread = std::thread([&d] {
        auto guard = asio::make_work_guard(d.io);
        d.io.run();
    });
    d.sim_thread = std::thread([&d] { d.simulate(); });
}

void LiveService::stop()
{
    if (!impl_ || !impl_->started)
    {
        return;
    }
    auto &d = *impl_;
    {
        std::lock_guard lk(d.mu);
        d.stopping = true;
    }
    d.cv.notify_all();
    d.sim_thread.join();
    asio::post(d.io, [&d] {
        boost::system::error_code ec;
        d.acceptor.close(ec);
        d.hub.shutdown();
        d.io.stop();
    });
    d.io_thread.join();
    d.started = false;
}

std::uint16_t LiveService::port() const
{
    return impl_->bound_port;
}

ServiceStats LiveService::stats() const
{
    return {impl_->ticks.load(), impl_->drift.load(), impl_->max_lateness.load(),
            impl_->clients.load()};
}

} // namespace neuropod::live
