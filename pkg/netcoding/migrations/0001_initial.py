from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created_at', models.DateTimeField(auto_now_add=True, help_text='Timestamp when this record was created. Automatically set on creation.')),
                ('updated_at', models.DateTimeField(auto_now=True, help_text='Timestamp when this record was last updated. Automatically updated on save.')),
                ('command', models.CharField(choices=[('capacity', 'Capacity'), ('simulate', 'Simulate'), ('sweep', 'Sweep'), ('exponent', 'Exponent'), ('fluidcheck', 'Fluid check')], db_index=True, help_text='Management command that produced this run.', max_length=20)),
                ('network', models.CharField(help_text='Network argument as given (file path, bundled:<name> or tandem:<rates>).', max_length=255)),
                ('config_hash', models.CharField(db_index=True, help_text='Hash of the full command configuration; equal hashes mean equal tables.', max_length=16)),
                ('seed', models.BigIntegerField(blank=True, help_text='Base seed of the run. Replication i uses seed XOR i.', null=True)),
                ('output_path', models.CharField(blank=True, default='', help_text="Where the CSV table was written ('-' for standard output).", max_length=500)),
                ('row_count', models.PositiveIntegerField(default=0, help_text='Number of data rows in the table.')),
                ('exit_code', models.PositiveSmallIntegerField(default=0, help_text='0 success, 2 configuration error, 3 guard refusal, 4 statistical no-fit.')),
                ('summary', models.JSONField(blank=True, default=dict, help_text='Headline numbers of the run (success rate, fitted slope, ...).')),
            ],
            options={
                'verbose_name': 'experiment run',
                'ordering': ['-created_at'],
                'get_latest_by': 'created_at',
                'abstract': False,
                'indexes': [models.Index(fields=['command', 'created_at'], name='netcoding_run_cmd_created_idx')],
            },
        ),
    ]
