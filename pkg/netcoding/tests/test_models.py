from django.contrib import admin
from django.test import RequestFactory, TestCase, override_settings

from netcoding.admin.run import ExperimentRunAdmin
from netcoding.models import ExperimentRun


def make_run(**fields):
    values = dict(command='simulate', network='bundled:tandem2', config_hash='0123456789abcdef', seed=7,
                  output_path='-', row_count=3, summary={'success_rate': 0.5})
    values.update(fields)
    return ExperimentRun.record(**values)


class ExperimentRunTests(TestCase):
    def test_record_stores_a_run(self):
        run = make_run()
        self.assertIsNotNone(run.pk)
        self.assertTrue(run.succeeded)
        self.assertEqual(str(run), f"simulate #{run.pk} (bundled:tandem2, seed 7)")

    @override_settings(NETCODING={'RECORD_RUNS': False})
    def test_recording_can_be_switched_off(self):
        self.assertIsNone(make_run())
        self.assertEqual(ExperimentRun.objects.count(), 0)

    def test_failed_run(self):
        run = make_run(exit_code=4)
        self.assertFalse(run.succeeded)

    def test_age_display(self):
        self.assertTrue(make_run().get_age_display().startswith('Created '))


class ExperimentRunAdminTests(TestCase):
    def setUp(self):
        self.admin = ExperimentRunAdmin(ExperimentRun, admin.site)
        self.request = RequestFactory().get('/admin/netcoding/experimentrun/')

    def test_csv_export(self):
        make_run()
        make_run(command='exponent', exit_code=4, seed=None)
        response = self.admin.export_as_csv(self.request, ExperimentRun.objects.order_by('id'))
        lines = response.content.decode().splitlines()
        self.assertEqual(response['Content-Type'], 'text/csv')
        self.assertEqual(lines[0].split(','), self.admin.export_fields)
        self.assertEqual(len(lines), 3)
        self.assertIn('exponent', lines[2])

    def test_csv_export_walks_summary_keys(self):
        make_run()
        self.admin.export_fields = ['command', 'summary__success_rate']
        response = self.admin.export_as_csv(self.request, ExperimentRun.objects.all())
        self.assertEqual(response.content.decode().splitlines()[1], 'simulate,0.5')

    def test_exit_badge(self):
        self.assertIn('green', self.admin.exit_badge(make_run()))
        self.assertIn('red', self.admin.exit_badge(make_run(exit_code=3)))

    def test_age_column(self):
        self.assertIn('age', self.admin.list_display)
        self.assertTrue(self.admin.age(make_run()).startswith('Created '))

    def test_runs_cannot_be_added_by_hand(self):
        self.assertFalse(self.admin.has_add_permission(self.request))

    def test_timestamps_are_read_only(self):
        readonly = self.admin.get_readonly_fields(self.request)
        self.assertIn('created_at', readonly)
        self.assertIn('updated_at', readonly)
